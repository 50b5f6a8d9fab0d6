use std::collections::HashSet;

use crate::chevalley::{GroupElement, Parabolic};
use crate::error::{EngineError, Result};
use crate::field::{Char2Field, Matrix};
use crate::rootdata::standard_levi_cocharacter;
use crate::weyl::{levi_chain, Perm};

/// A group given by invertible matrices acting on column vectors `F^n`.
#[derive(Clone, Debug)]
pub struct MatrixModule<F> {
    n: usize,
    gens: Vec<Matrix<F>>,
}

/// Enumeration cap for the spin-based tests: `q^n` vectors at most.
const VECTOR_LIMIT: u64 = 1 << 22;

impl<F: Char2Field> MatrixModule<F> {
    pub fn new(n: usize, gens: Vec<Matrix<F>>) -> Result<Self> {
        for g in &gens {
            if g.rows() != n || g.cols() != n {
                return Err(EngineError::Parse(format!("expected {n}x{n} generator")));
            }
            if g.rank() != n {
                return Err(EngineError::DivisionByZero);
            }
        }
        Ok(MatrixModule { n, gens })
    }

    /// The permutation module: `e_i ↦ e_{π(i)}`.
    pub fn permutation(n: usize, perms: &[Perm]) -> Result<Self> {
        let gens = perms
            .iter()
            .map(|p| {
                if p.degree() != n {
                    return Err(EngineError::DegreeOutOfRange(p.degree()));
                }
                Ok(perm_matrix(p))
            })
            .collect::<Result<_>>()?;
        Self::new(n, gens)
    }

    pub fn dim(&self) -> usize {
        self.n
    }

    pub fn generators(&self) -> &[Matrix<F>] {
        &self.gens
    }

    /// The smallest invariant subspace containing `v`, as RREF rows.
    pub fn spin(&self, v: &[F]) -> Vec<Vec<F>> {
        let mut basis: Vec<Vec<F>> = Vec::new();
        let mut queue = vec![v.to_vec()];
        while let Some(x) = queue.pop() {
            if in_span(&basis, &x) {
                continue;
            }
            basis.push(x.clone());
            for g in &self.gens {
                queue.push(g.mul_vec(&x));
            }
        }
        rref_rows(basis, self.n)
    }

    fn check_size(&self) -> Result<()> {
        let too_big = F::order()
            .checked_pow(self.n as u32)
            .is_none_or(|c| c > VECTOR_LIMIT);
        if too_big {
            return Err(EngineError::ModuleTooLarge {
                dim: self.n,
                degree: F::DEGREE,
            });
        }
        Ok(())
    }

    /// Spins of one vector per line, deduplicated.
    fn cyclic_submodules(&self) -> Result<Vec<Vec<Vec<F>>>> {
        self.check_size()?;
        let elems = F::elements();
        let q = elems.len();
        let mut seen = HashSet::new();
        let mut out = Vec::new();
        let total = q.pow(self.n as u32);
        for code in 1..total {
            let mut v = Vec::with_capacity(self.n);
            let mut c = code;
            for _ in 0..self.n {
                v.push(elems[c % q]);
                c /= q;
            }
            // one representative per line: leading nonzero entry 1
            if !v.iter().find(|x| !x.is_zero()).is_some_and(|x| x.is_one()) {
                continue;
            }
            let s = self.spin(&v);
            if seen.insert(s.clone()) {
                out.push(s);
            }
        }
        Ok(out)
    }

    /// Every nonzero submodule, as RREF row bases: sums of cyclic ones.
    pub fn submodules(&self) -> Result<Vec<Vec<Vec<F>>>> {
        let cyc = self.cyclic_submodules()?;
        let mut seen: HashSet<Vec<Vec<F>>> = cyc.iter().cloned().collect();
        let mut all = cyc.clone();
        let mut i = 0;
        while i < all.len() {
            for c in &cyc {
                let sum = rref_rows(all[i].iter().chain(c).cloned().collect(), self.n);
                if seen.insert(sum.clone()) {
                    all.push(sum);
                }
            }
            i += 1;
        }
        Ok(all)
    }

    /// No invariant subspaces besides 0 and the whole space.
    pub fn is_irreducible(&self) -> Result<bool> {
        if self.n == 0 {
            return Ok(false);
        }
        Ok(self.cyclic_submodules()?.iter().all(|s| s.len() == self.n))
    }

    /// The socle (sum of minimal submodules) is everything.
    pub fn is_semisimple(&self) -> Result<bool> {
        let mut cyc = self.cyclic_submodules()?;
        cyc.sort_by_key(Vec::len);
        let mut minimal: Vec<&Vec<Vec<F>>> = Vec::new();
        for s in &cyc {
            if !minimal.iter().any(|m| m.len() < s.len() && contains(s, m)) {
                minimal.push(s);
            }
        }
        let socle: Vec<Vec<F>> = minimal.into_iter().flatten().cloned().collect();
        Ok(rref_rows(socle, self.n).len() == self.n)
    }
}

fn perm_matrix<F: Char2Field>(p: &Perm) -> Matrix<F> {
    let n = p.degree();
    let mut m = Matrix::zeros(n, n);
    for i in 0..n {
        m[(p.apply(i), i)] = F::one();
    }
    m
}

fn rref_rows<F: Char2Field>(rows: Vec<Vec<F>>, n: usize) -> Vec<Vec<F>> {
    if rows.is_empty() {
        return rows;
    }
    let mut m = Matrix::from_rows(rows);
    let r = m.rref().len();
    debug_assert_eq!(m.cols(), n);
    (0..r).map(|i| m.row(i).to_vec()).collect()
}

fn in_span<F: Char2Field>(basis: &[Vec<F>], x: &[F]) -> bool {
    if x.iter().all(|c| c.is_zero()) {
        return true;
    }
    if basis.is_empty() {
        return false;
    }
    let mut rows = basis.to_vec();
    let r = Matrix::from_rows(rows.clone()).rank();
    rows.push(x.to_vec());
    Matrix::from_rows(rows).rank() == r
}

/// Whether the row space of `small` lies in that of `big`.
fn contains<F: Char2Field>(big: &[Vec<F>], small: &[Vec<F>]) -> bool {
    small.iter().all(|v| in_span(big, v))
}

/// The action of Levi elements on the natural module `k^n` of
/// `[L, L] = SL_n`: `n_w` as the permutation matrix of its S_n image and
/// `α_i∨(c)` as `diag(.., c, c⁻¹, ..)`. The σ-coordinate of a torus element
/// is rewritten through the central cocharacter λ, which changes the matrix
/// only by a scalar.
pub fn levi_matrix_model<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<MatrixModule<F>> {
    let sys = par.system();
    let chain = levi_chain(sys).ok_or_else(|| EngineError::UnknownType(format!("{} has no type-A Levi", sys.root_type())))?;
    let n = chain.len() + 1;
    let sigma = sys.sigma().ok_or_else(|| EngineError::UnknownType(sys.root_type().to_string()))?;
    let lambda = standard_levi_cocharacter(sys)?;
    let mut mats = Vec::new();
    for g in gens {
        if !g.is_levi() {
            return Err(EngineError::UnipotentPart);
        }
        let p = g
            .weyl()
            .levi_permutation(sys)
            .ok_or_else(|| EngineError::NotALeviLetter(g.weyl().word_letters(sys).join(" ")))?;
        let c = g.torus().coords();
        // σ∨(s) = λ(r) · Π α_i∨(r^{-λ_i}) with r^{λ_σ} = s
        let s = c[sigma];
        let r = F::elements()
            .into_iter()
            .find(|r| !r.is_zero() && r.powi(lambda.0[sigma]).ok() == Some(s))
            .ok_or(EngineError::NoElementOfOrder {
                order: lambda.0[sigma] as u64,
                degree: F::DEGREE,
            })?;
        let mut diag = vec![F::one(); n];
        for (k, &i) in chain.iter().enumerate() {
            let x = c[i] * r.powi(-lambda.0[i])?;
            diag[k] = diag[k] * x;
            diag[k + 1] = diag[k + 1] * x.try_inv()?;
        }
        let mut d = Matrix::zeros(n, n);
        for (k, x) in diag.into_iter().enumerate() {
            d[(k, k)] = x;
        }
        mats.push(perm_matrix::<F>(&p).mul_mat(&d));
    }
    MatrixModule::new(n, mats)
}

/// G-complete reducibility of a subgroup of the Levi, via semisimplicity of
/// the natural `[L, L]`-module. Semisimplicity over a finite field is the
/// same over its algebraic closure since finite fields are perfect.
pub fn is_gcr<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<bool> {
    levi_matrix_model(par, gens)?.is_semisimple()
}

/// The same test for a subgroup of W_L = S_n: its permutation module over
/// GF(2).
pub fn is_gcr_perm(n: usize, gens: &[Perm]) -> Result<bool> {
    MatrixModule::<crate::Gf2>::permutation(n, gens)?.is_semisimple()
}
