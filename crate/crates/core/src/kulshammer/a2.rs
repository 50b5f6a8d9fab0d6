use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::presentation::{FinitePresentation, GroupOps};
use crate::error::{EngineError, Result};
use crate::field::{Char2Field, Matrix};

type M3<F> = [[F; 3]; 3];

/// An element `x σ^i` of SL_3 ⋊ ⟨σ⟩, σ the graph automorphism
/// `x ↦ J (x⁻¹)ᵀ J` with J the antidiagonal permutation matrix.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct AugmentedMatrix<F> {
    pub m: M3<F>,
    pub graph: bool,
}

fn mul3<F: Char2Field>(x: &M3<F>, y: &M3<F>) -> M3<F> {
    let mut r = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j] + x[i][2] * y[2][j];
        }
    }
    r
}

fn det3<F: Char2Field>(x: &M3<F>) -> F {
    x[0][0] * (x[1][1] * x[2][2] + x[1][2] * x[2][1]) + x[0][1] * (x[1][0] * x[2][2] + x[1][2] * x[2][0])
        + x[0][2] * (x[1][0] * x[2][1] + x[1][1] * x[2][0])
}

/// Inverse of a determinant-one matrix: the adjugate (no signs in
/// characteristic 2).
fn inv3<F: Char2Field>(x: &M3<F>) -> M3<F> {
    let mut r = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            let (a, b) = ((j + 1) % 3, (j + 2) % 3);
            let (c, d) = ((i + 1) % 3, (i + 2) % 3);
            r[i][j] = x[a][c] * x[b][d] + x[a][d] * x[b][c];
        }
    }
    r
}

fn graph_auto<F: Char2Field>(x: &M3<F>) -> M3<F> {
    let inv = inv3(x);
    let mut r = [[F::zero(); 3]; 3];
    for i in 0..3 {
        for j in 0..3 {
            // (J yᵀ J)_{ij} = y_{2-j, 2-i}
            r[i][j] = inv[2 - j][2 - i];
        }
    }
    r
}

fn ident3<F: Char2Field>() -> M3<F> {
    let mut r = [[F::zero(); 3]; 3];
    for (i, row) in r.iter_mut().enumerate() {
        row[i] = F::one();
    }
    r
}

/// `I + x E_{ij}` (1-based indices).
pub fn elementary<F: Char2Field>(i: usize, j: usize, x: F) -> AugmentedMatrix<F> {
    let mut m = ident3();
    m[i - 1][j - 1] = x;
    AugmentedMatrix::plain(m)
}

impl<F: Char2Field> AugmentedMatrix<F> {
    pub fn plain(m: M3<F>) -> Self {
        AugmentedMatrix { m, graph: false }
    }

    pub fn identity() -> Self {
        Self::plain(ident3())
    }

    pub fn sigma() -> Self {
        AugmentedMatrix {
            m: ident3(),
            graph: true,
        }
    }

    pub fn mul(&self, o: &Self) -> Self {
        let y = if self.graph { graph_auto(&o.m) } else { o.m };
        AugmentedMatrix {
            m: mul3(&self.m, &y),
            graph: self.graph ^ o.graph,
        }
    }

    pub fn inv(&self) -> Self {
        let xi = inv3(&self.m);
        AugmentedMatrix {
            m: if self.graph { graph_auto(&xi) } else { xi },
            graph: self.graph,
        }
    }

    pub fn conj(&self, x: &Self) -> Self {
        self.mul(x).mul(&self.inv())
    }

    pub fn format(&self) -> String {
        let rows: Vec<String> = self
            .m
            .iter()
            .map(|r| r.iter().map(|x| x.to_hex()).collect::<Vec<_>>().join(" "))
            .collect();
        format!("[{}]{}", rows.join("; "), if self.graph { "·σ" } else { "" })
    }
}

pub struct A2Ops;

impl<F: Char2Field> GroupOps<AugmentedMatrix<F>> for A2Ops {
    fn mul(&self, g: &AugmentedMatrix<F>, h: &AugmentedMatrix<F>) -> AugmentedMatrix<F> {
        g.mul(h)
    }
    fn inv(&self, g: &AugmentedMatrix<F>) -> AugmentedMatrix<F> {
        g.inv()
    }
    fn identity(&self) -> AugmentedMatrix<F> {
        AugmentedMatrix::identity()
    }
    fn same(&self, g: &AugmentedMatrix<F>, h: &AugmentedMatrix<F>) -> bool {
        g == h
    }
}

/// ρ_a(r) = t = (α−β)∨(c), ρ_a(s) = σ ε_{α+β}(a), ρ_a(z) = ε_{α+β}(1)
/// for Γ = D_{2d} × C_2.
#[derive(Clone, Debug)]
pub struct A2Family<F> {
    pub d: u64,
    pub c: F,
    pub t: AugmentedMatrix<F>,
    gamma: FinitePresentation,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct A2Report {
    pub d: u64,
    pub field_degree: u32,
    pub c: String,
    pub t: String,
    /// t is a scalar matrix (then C_{SL_3}(t) is everything).
    pub t_central: bool,
    pub rho_well_defined: bool,
    pub sylow_conjugates: bool,
    /// Ordered pairs (a, b), a ≠ b, found conjugate, with a witness.
    pub conjugate_pairs: Vec<(String, String, String)>,
    pub method: String,
    /// Whether brute force and the centralizer-first search agree.
    pub methods_agree: Option<bool>,
    pub nonconjugate_off_diagonal: bool,
}

impl<F: Char2Field> A2Family<F> {
    pub fn new(d: u64) -> Result<Self> {
        if d < 3 || d % 2 == 0 {
            return Err(EngineError::Parse(format!("d = {d} must be odd and at least 3")));
        }
        let c = F::element_of_order(d)?;
        let ci = c.try_inv()?;
        let mut m = [[F::zero(); 3]; 3];
        // α∨(c) β∨(c⁻¹) = diag(c, c⁻², c)
        m[0][0] = c;
        m[1][1] = ci * ci;
        m[2][2] = c;
        let rels = [
            format!("r^{d}"),
            "s^2".into(),
            "z^2".into(),
            "s r s^-1 = r^-1".into(),
            "[r, z]".into(),
            "[s, z]".into(),
        ];
        let refs: Vec<&str> = rels.iter().map(String::as_str).collect();
        Ok(A2Family {
            d,
            c,
            t: AugmentedMatrix::plain(m),
            gamma: FinitePresentation::new(&["r", "s", "z"], &refs)?,
        })
    }

    pub fn gamma(&self) -> &FinitePresentation {
        &self.gamma
    }

    pub fn rho(&self, a: F) -> [AugmentedMatrix<F>; 3] {
        [
            self.t,
            AugmentedMatrix::sigma().mul(&elementary(1, 3, a)),
            elementary(1, 3, F::one()),
        ]
    }

    /// u(√a) = ε_α(√a) ε_β(√a).
    pub fn sylow_conjugator(&self, a: F) -> AugmentedMatrix<F> {
        let r = a.sqrt();
        elementary(1, 2, r).mul(&elementary(2, 3, r))
    }

    pub fn sylow_check(&self, a: F) -> bool {
        let u = self.sylow_conjugator(a);
        let r0 = self.rho(F::zero());
        let ra = self.rho(a);
        u.conj(&r0[1]) == ra[1] && u.conj(&r0[2]) == ra[2]
    }

    /// The b with `g ρ_a g⁻¹ = ρ_b`, if any.
    fn target(&self, g: &AugmentedMatrix<F>, rho_a: &[AugmentedMatrix<F>; 3]) -> Option<F> {
        if g.conj(&rho_a[0]) != self.t || g.conj(&rho_a[2]) != rho_a[2] {
            return None;
        }
        let s = g.conj(&rho_a[1]);
        let b = s.m[0][2];
        (s == self.rho(b)[1]).then_some(b)
    }

    /// For each element, the conjugate pairs it witnesses.
    fn pairs_for(&self, g: &AugmentedMatrix<F>, rhos: &[(F, [AugmentedMatrix<F>; 3])]) -> Vec<(F, F)> {
        rhos.iter()
            .filter_map(|(a, r)| self.target(g, r).map(|b| (*a, b)))
            .collect()
    }

    fn collect_pairs(&self, elems: Vec<AugmentedMatrix<F>>) -> Vec<(F, F, AugmentedMatrix<F>)> {
        let rhos: Vec<(F, [AugmentedMatrix<F>; 3])> = F::elements().into_iter().map(|a| (a, self.rho(a))).collect();
        let hits: Vec<(usize, F, F)> = elems
            .par_iter()
            .enumerate()
            .flat_map_iter(|(i, g)| {
                self.pairs_for(g, &rhos)
                    .into_iter()
                    .filter(|(a, b)| a != b)
                    .map(move |(a, b)| (i, a, b))
            })
            .collect();
        let mut out: Vec<(F, F, AugmentedMatrix<F>)> = Vec::new();
        for (i, a, b) in hits {
            if !out.iter().any(|(x, y, _)| *x == a && *y == b) {
                out.push((a, b, elems[i]));
            }
        }
        out.sort_by_key(|(a, b, _)| (*a, *b));
        out
    }

    /// Every element of SL_3(GF(q)) ⋊ ⟨σ⟩.
    pub fn all_elements() -> Vec<AugmentedMatrix<F>> {
        let el = F::elements();
        let q = el.len();
        let total = q.pow(9);
        let mats: Vec<M3<F>> = (0..total)
            .into_par_iter()
            .filter_map(|code| {
                let mut c = code;
                let mut m = [[F::zero(); 3]; 3];
                for row in m.iter_mut() {
                    for x in row.iter_mut() {
                        *x = el[c % q];
                        c /= q;
                    }
                }
                det3(&m).is_one().then_some(m)
            })
            .collect();
        let mut out: Vec<AugmentedMatrix<F>> = mats.iter().map(|&m| AugmentedMatrix::plain(m)).collect();
        out.extend(mats.iter().map(|&m| AugmentedMatrix { m, graph: true }));
        out
    }

    /// Elements `g σ^i` with `g σ^i(t) = t g` and det g = 1: the linear
    /// conditions are solved first, then the kernel is enumerated.
    pub fn centralizer_of_t(&self) -> Vec<AugmentedMatrix<F>> {
        let mut out = Vec::new();
        for graph in [false, true] {
            let st = if graph { graph_auto(&self.t.m) } else { self.t.m };
            // unknown g_{kl} at column 3k+l; equation (i,j): Σ_k g_ik st_kj + t_ik g_kj
            let mut rows = Vec::new();
            for i in 0..3 {
                for j in 0..3 {
                    let mut row = vec![F::zero(); 9];
                    for k in 0..3 {
                        row[3 * i + k] = row[3 * i + k] + st[k][j];
                        row[3 * k + j] = row[3 * k + j] + self.t.m[i][k];
                    }
                    rows.push(row);
                }
            }
            let basis = Matrix::from_rows(rows).kernel();
            let el = F::elements();
            let q = el.len();
            let total = q.pow(basis.len() as u32);
            let found: Vec<AugmentedMatrix<F>> = (0..total)
                .into_par_iter()
                .filter_map(|code| {
                    let mut c = code;
                    let mut v = [F::zero(); 9];
                    for b in &basis {
                        let x = el[c % q];
                        c /= q;
                        for (vi, bi) in v.iter_mut().zip(b) {
                            *vi = *vi + x * *bi;
                        }
                    }
                    let m = [[v[0], v[1], v[2]], [v[3], v[4], v[5]], [v[6], v[7], v[8]]];
                    det3(&m).is_one().then_some(AugmentedMatrix { m, graph })
                })
                .collect();
            out.extend(found);
        }
        out
    }

    pub fn report(&self, brute_force: bool) -> Result<A2Report> {
        let elems = F::elements();
        let rho_well_defined = elems.iter().all(|&a| {
            self.gamma
                .check(&A2Ops, &self.rho(a))
                .map(|c| c.iter().all(|x| x.holds))
                .unwrap_or(false)
        });
        let sylow_conjugates = elems.iter().all(|&a| self.sylow_check(a));
        let structured = self.collect_pairs(self.centralizer_of_t());
        let (pairs, method, agree) = if brute_force {
            let bf = self.collect_pairs(Self::all_elements());
            let same = bf.iter().map(|(a, b, _)| (*a, *b)).eq(structured.iter().map(|(a, b, _)| (*a, *b)));
            (bf, "brute-force", Some(same))
        } else {
            (structured, "centralizer-first", None)
        };
        for (a, b, g) in &pairs {
            if self.target(g, &self.rho(*a)) != Some(*b) {
                return Err(EngineError::Solver("conjugator replay failed".into()));
            }
        }
        let m = &self.t.m;
        Ok(A2Report {
            d: self.d,
            field_degree: F::DEGREE,
            c: self.c.to_hex(),
            t: self.t.format(),
            t_central: m[0][0] == m[1][1] && m[1][1] == m[2][2],
            rho_well_defined,
            sylow_conjugates,
            nonconjugate_off_diagonal: pairs.is_empty(),
            conjugate_pairs: pairs
                .iter()
                .map(|(a, b, g)| (a.to_hex(), b.to_hex(), g.format()))
                .collect(),
            method: method.into(),
            methods_agree: agree,
        })
    }
}
