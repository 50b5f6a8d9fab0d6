//! Fixed points of Levi subgroups on the unipotent radical: the symbolic
//! centralizer system, its solution by linear elimination and square
//! roots, the infinitesimal centralizer, and non-separability certificates.

use std::collections::{BTreeMap, BTreeSet, HashSet};

use num_traits::Zero;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::chevalley::{GroupElement, LieVector, MPoly, Parabolic};
use crate::error::{EngineError, Result};
use crate::field::{Char2Field, Embedding, Matrix};
use crate::weyl::{orbits, SubgroupClass, WeylElement};
use crate::{Gf16, Gf4, Gf64};

/// Polynomial equations `f = 0` in variables named by labels.
#[derive(Clone, Debug, PartialEq)]
pub struct PolySystem<F: Char2Field> {
    vars: Vec<u32>,
    equations: Vec<MPoly<F>>,
}

impl<F: Char2Field> PolySystem<F> {
    pub const DEGREE_CAP: usize = 3;

    pub fn new(vars: Vec<u32>, equations: Vec<MPoly<F>>) -> Result<Self> {
        let declared: BTreeSet<u32> = vars.iter().copied().collect();
        for e in &equations {
            if let Some(v) = e.vars().into_iter().find(|v| !declared.contains(v)) {
                return Err(EngineError::Solver(format!("undeclared variable x{v}")));
            }
            if e.degree() > Self::DEGREE_CAP {
                return Err(EngineError::Solver(format!("equation of degree {} exceeds the cap", e.degree())));
            }
        }
        let equations = equations.into_iter().filter(|e| !e.is_zero()).collect();
        Ok(PolySystem { vars, equations })
    }

    pub fn vars(&self) -> &[u32] {
        &self.vars
    }

    pub fn equations(&self) -> &[MPoly<F>] {
        &self.equations
    }

    /// Degree-1 coefficients, one row per equation and one column per
    /// variable: the Zariski tangent space at the origin is its kernel.
    pub fn linear_part(&self) -> Matrix<F> {
        let rows: Vec<Vec<F>> = self
            .equations
            .iter()
            .map(|e| self.vars.iter().map(|&v| e.coefficient(&[v])).collect())
            .collect();
        if rows.is_empty() {
            return Matrix::zeros(0, self.vars.len());
        }
        Matrix::from_rows(rows)
    }

    pub fn tangent_dim(&self) -> usize {
        self.vars.len() - self.linear_part().rank()
    }

    pub fn is_satisfied_by(&self, point: &dyn Fn(u32) -> F) -> bool {
        self.equations.iter().all(|e| e.evaluate(point).is_zero())
    }
}

/// Replaces every equation that is a square by its square root; over a
/// perfect field `g² = 0` and `g = 0` have the same solutions.
pub fn square_reduce<F: Char2Field>(sys: &PolySystem<F>) -> PolySystem<F> {
    let equations = sys
        .equations
        .iter()
        .map(|e| {
            let mut e = e.clone();
            while let Some(r) = e.square_root() {
                if e.degree() == 0 {
                    break;
                }
                e = r;
            }
            e
        })
        .collect();
    PolySystem {
        vars: sys.vars.clone(),
        equations,
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    SquareReduction,
    PointCount,
    BruteForce,
}

/// Outcome of [`solve`]: eliminated variables expressed in the free ones,
/// plus whatever could not be linearized.
#[derive(Clone, Debug)]
pub struct Solution<F: Char2Field> {
    pub consistent: bool,
    pub vars: Vec<u32>,
    pub free: Vec<u32>,
    pub substitutions: BTreeMap<u32, MPoly<F>>,
    pub residual: Vec<MPoly<F>>,
    pub dim: Option<usize>,
    pub method: Method,
}

impl<F: Char2Field> Solution<F> {
    /// Values of all variables at a point of the parameterization (free
    /// variables not listed are 0); `None` if residual equations remain.
    pub fn point(&self, free_values: &BTreeMap<u32, F>) -> Option<BTreeMap<u32, F>> {
        if !self.residual.is_empty() || !self.consistent {
            return None;
        }
        let val = |v: u32| free_values.get(&v).copied().unwrap_or_else(F::zero);
        Some(
            self.vars
                .iter()
                .map(|&v| {
                    let x = match self.substitutions.get(&v) {
                        Some(e) => e.evaluate(&val),
                        None => val(v),
                    };
                    (v, x)
                })
                .collect(),
        )
    }

    /// Tangent space at the origin of the parameterized variety, as vectors
    /// indexed like `vars`.
    pub fn tangent_at_origin(&self) -> Option<Vec<Vec<F>>> {
        if !self.residual.is_empty() || !self.consistent {
            return None;
        }
        Some(
            self.free
                .iter()
                .map(|&f| {
                    self.vars
                        .iter()
                        .map(|&v| match self.substitutions.get(&v) {
                            Some(e) => e.coefficient(&[f]),
                            None if v == f => F::one(),
                            None => F::zero(),
                        })
                        .collect()
                })
                .collect(),
        )
    }

    /// `ε_l(expr)` for every nonzero coordinate, e.g.
    /// `ε1(x1) ε2(x1) ... ε15(x1 + x7 + x9) ...`.
    pub fn normal_form(&self) -> String {
        let mut parts = Vec::new();
        for &v in &self.vars {
            let e = match self.substitutions.get(&v) {
                Some(e) => e.clone(),
                None => MPoly::var(v),
            };
            if !e.is_zero() {
                parts.push(format!("ε{v}({e})"));
            }
        }
        if parts.is_empty() {
            "1".to_string()
        } else {
            parts.join(" ")
        }
    }
}

/// Solves by repeatedly eliminating a variable that occurs linearly
/// (fully linear equations first, highest `priority` as pivot) and taking
/// square roots of equations that are squares. Residual equations are
/// handed to finite-field point counting.
pub fn solve<F: Char2Field>(sys: &PolySystem<F>, priority: &dyn Fn(u32) -> (i32, u32)) -> Result<Solution<F>> {
    let mut eqs: Vec<MPoly<F>> = sys.equations.clone();
    let mut subs: BTreeMap<u32, MPoly<F>> = BTreeMap::new();
    let inconsistent = |subs: BTreeMap<u32, MPoly<F>>, eqs: Vec<MPoly<F>>| Solution {
        consistent: false,
        vars: sys.vars.clone(),
        free: Vec::new(),
        substitutions: subs,
        residual: eqs,
        dim: None,
        method: Method::SquareReduction,
    };
    loop {
        eqs.retain(|e| !e.is_zero());
        if eqs.iter().any(|e| e.as_constant().is_some()) {
            return Ok(inconsistent(subs, eqs));
        }
        let pivot = pick_pivot(&eqs, priority);
        if let Some((i, v)) = pivot {
            let e = eqs.swap_remove(i);
            let c = e.coefficient(&[v]);
            let rest = e + MPoly::var(v).scale_field(c);
            let expr = rest.scale_field(c.try_inv()?);
            for q in eqs.iter_mut() {
                *q = q.substitute(v, &expr);
            }
            for s in subs.values_mut() {
                *s = s.substitute(v, &expr);
            }
            subs.insert(v, expr);
            continue;
        }
        let mut changed = false;
        for e in eqs.iter_mut() {
            if let Some(r) = e.square_root() {
                if r != *e {
                    *e = r;
                    changed = true;
                }
            }
        }
        if !changed {
            break;
        }
    }
    let free: Vec<u32> = sys.vars.iter().copied().filter(|v| !subs.contains_key(v)).collect();
    if eqs.is_empty() {
        return Ok(Solution {
            consistent: true,
            vars: sys.vars.clone(),
            dim: Some(free.len()),
            free,
            substitutions: subs,
            residual: eqs,
            method: Method::SquareReduction,
        });
    }
    let (res_dim, method) = residual_dimension(&eqs)?;
    let involved: BTreeSet<u32> = eqs.iter().flat_map(MPoly::vars).collect();
    Ok(Solution {
        consistent: res_dim.is_some(),
        vars: sys.vars.clone(),
        dim: res_dim.map(|d| free.len() - involved.len() + d),
        free,
        substitutions: subs,
        residual: eqs,
        method,
    })
}

fn pick_pivot<F: Char2Field>(eqs: &[MPoly<F>], priority: &dyn Fn(u32) -> (i32, u32)) -> Option<(usize, u32)> {
    let mut best: Option<(bool, (i32, u32), usize, u32)> = None;
    for (i, e) in eqs.iter().enumerate() {
        let linear = e.degree() == 1;
        for v in e.vars() {
            if !e.is_linear_in(v) {
                continue;
            }
            let key = (linear, priority(v));
            if best.is_none_or(|b| (b.0, b.1) < key) {
                best = Some((linear, priority(v), i, v));
            }
        }
    }
    best.map(|b| (b.2, b.3))
}

trait ScaleField<F> {
    fn scale_field(&self, c: F) -> Self;
}

impl<F: Char2Field> ScaleField<F> for MPoly<F> {
    fn scale_field(&self, c: F) -> Self {
        crate::chevalley::Coefficient::scale(self, c)
    }
}

const POINT_LIMIT: u64 = 1 << 24;

/// Dimension of the residual variety from point counts. Counts over
/// GF(4), GF(16), GF(64) must fit `N_q = c·q^d` with one integer `d`;
/// a single GF(4) enumeration must give an exact power of 4. When both
/// routes run they must agree.
fn residual_dimension<F: Char2Field>(eqs: &[MPoly<F>]) -> Result<(Option<usize>, Method)> {
    let vars: Vec<u32> = eqs.iter().flat_map(MPoly::vars).collect::<BTreeSet<_>>().into_iter().collect();
    let k = vars.len() as u32;
    let counts: Vec<(u32, u64)> = [
        (2, count_points::<F, Gf4>(eqs, &vars)),
        (4, count_points::<F, Gf16>(eqs, &vars)),
        (6, count_points::<F, Gf64>(eqs, &vars)),
    ]
    .into_iter()
    .filter_map(|(m, n)| n.map(|n| (m, n)))
    .collect();
    if counts.iter().any(|&(_, n)| n == 0) {
        // no points over a finite field; treat as no solution only if all
        // counts agree
        if counts.iter().all(|&(_, n)| n == 0) {
            return Ok((None, Method::PointCount));
        }
        return Err(EngineError::Solver("point counts vanish over some fields only".into()));
    }
    let slope = if counts.len() >= 2 {
        let mut d = None;
        for w in counts.windows(2) {
            let ((m1, n1), (m2, n2)) = (w[0], w[1]);
            let ratio_bits = (n2 as f64 / n1 as f64).log2();
            let dd = ratio_bits / f64::from(m2 - m1);
            if n2 % n1 != 0 || (dd - dd.round()).abs() > 1e-9 || dd < 0.0 {
                return Err(EngineError::Solver(format!("non-integer point-count slope {dd}")));
            }
            let dd = dd.round() as usize;
            if d.is_some_and(|x| x != dd) {
                return Err(EngineError::Solver("point-count slopes disagree".into()));
            }
            d = Some(dd);
        }
        d
    } else {
        None
    };
    let brute = if k <= 12 {
        counts.iter().find(|&&(m, _)| m == 2).map(|&(_, n)| {
            let d = (n as f64).log(4.0).round() as u32;
            if 4u64.pow(d) == n {
                Ok(d as usize)
            } else {
                Err(EngineError::Solver(format!("{n} GF(4)-points is not a power of 4")))
            }
        })
    } else {
        None
    };
    match (slope, brute) {
        (Some(a), Some(b)) => {
            let b = b?;
            if a != b {
                return Err(EngineError::Solver(format!("point count gives {a}, brute force gives {b}")));
            }
            Ok((Some(a), Method::PointCount))
        }
        (Some(a), None) => Ok((Some(a), Method::PointCount)),
        (None, Some(b)) => Ok((Some(b?), Method::BruteForce)),
        (None, None) => Err(EngineError::Solver(format!("{k} residual variables exceed the enumeration limits"))),
    }
}

/// Number of common zeros over `G` of polynomials with coefficients in `F`
/// (embedded into `G`), if the enumeration is small enough.
pub fn count_points<F: Char2Field, G: Char2Field>(eqs: &[MPoly<F>], vars: &[u32]) -> Option<u64> {
    let emb = Embedding::<F, G>::new()?;
    let total = G::order().checked_pow(vars.len() as u32)?;
    if total > POINT_LIMIT {
        return None;
    }
    let idx: BTreeMap<u32, usize> = vars.iter().enumerate().map(|(i, &v)| (v, i)).collect();
    let lifted: Vec<Vec<(Vec<usize>, G)>> = eqs
        .iter()
        .map(|e| {
            e.terms()
                .map(|(m, c)| (m.iter().map(|v| idx[v]).collect(), emb.apply(*c)))
                .collect()
        })
        .collect();
    let elems = G::elements();
    let q = G::order();
    let count = (0..total)
        .into_par_iter()
        .filter(|&code| {
            let mut point = Vec::with_capacity(vars.len());
            let mut c = code;
            for _ in 0..vars.len() {
                point.push(elems[(c % q) as usize]);
                c /= q;
            }
            lifted.iter().all(|eq| {
                eq.iter()
                    .fold(G::zero(), |acc, (m, c)| acc + m.iter().fold(*c, |p, &i| p * point[i]))
                    .is_zero()
            })
        })
        .count();
    Some(count as u64)
}

// ---- centralizers in R_u(P) ----------------------------------------------

fn check_levi<F: Char2Field>(gens: &[GroupElement<F>]) -> Result<()> {
    if gens.iter().any(|g| !g.is_levi()) {
        return Err(EngineError::UnipotentPart);
    }
    Ok(())
}

/// Coefficient matching of `g u g⁻¹ = u` for a generic `u ∈ R_u(P)` and
/// every generator `g ∈ W_L ⋉ T`.
pub fn centralizer_system<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<PolySystem<F>> {
    check_levi(gens)?;
    let u = par.symbolic(par.labels())?;
    let mut eqs = Vec::new();
    for g in gens {
        let img = par.conjugate(g, &u);
        for p in 0..par.dim() {
            let e = img.at(p).clone() + u.at(p).clone();
            if !e.is_zero() {
                eqs.push(e);
            }
        }
    }
    PolySystem::new(par.labels().to_vec(), eqs)
}

/// Pivot order for elimination: higher σ-weight first, then larger label.
pub fn weight_priority<F: Char2Field>(par: &Parabolic<F>) -> impl Fn(u32) -> (i32, u32) + '_ {
    move |v| (par.weight(par.position(v).expect("label")), v)
}

/// `C_{R_u(P)}(K)` as a parameterized variety.
pub fn group_centralizer<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<Solution<F>> {
    let sys = centralizer_system(par, gens)?;
    let sol = solve(&sys, &weight_priority(par))?;
    if !sol.consistent {
        return Err(EngineError::Solver("centralizer system has no solution".into()));
    }
    Ok(sol)
}

/// `c_{Lie R_u(P)}(K)`: the common kernel of `ad(g) − 1`.
pub fn lie_centralizer<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<Vec<LieVector<F>>> {
    let n = par.dim();
    let mut stacked = Matrix::zeros(0, n);
    for g in gens {
        let mut m = par.ad_matrix(g)?;
        for i in 0..n {
            m[(i, i)] = m[(i, i)] + F::one();
        }
        stacked = stacked.vstack(&m);
    }
    Ok(stacked.kernel().into_iter().map(|coeffs| LieVector { coeffs }).collect())
}

/// Whether `x` lies in the span of `basis`.
pub fn in_span<F: Char2Field>(basis: &[Vec<F>], x: &[F]) -> bool {
    if basis.is_empty() {
        return x.iter().all(Zero::is_zero);
    }
    let a = Matrix::from_rows(basis.to_vec());
    let mut b = basis.to_vec();
    b.push(x.to_vec());
    Matrix::from_rows(b).rank() == a.rank()
}

/// A K-orbit O on the σ-weight-1 roots such that `e_O` is fixed by K but
/// `Π_O ε_i(1)` cannot be completed to a fixed point by factors of higher
/// weight. The obstruction comes from reordering a non-commuting pair
/// inside O; `pair` is the least such pair, `correction` the label of its
/// sum and `swapper` an element of K exchanging the two roots, if any.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Certificate {
    pub orbit: Vec<u32>,
    pub pair: (u32, u32),
    pub correction: u32,
    /// The swapping element as a permutation of the Levi's S_n.
    pub swapper: Option<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SeparabilityReport {
    pub class_id: Option<usize>,
    pub tangent_dim: usize,
    pub group_dim: usize,
    pub method: Method,
    pub separable: bool,
    pub normal_form: String,
    pub certificates: Vec<Certificate>,
}

/// All certificates for the group generated by `gens`.
pub fn find_certificates<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>]) -> Result<Vec<Certificate>> {
    check_levi(gens)?;
    let sys = par.system();
    let layer = sys.labels_of_weight(1);
    let weyl: Vec<WeylElement> = gens.iter().map(|g| g.weyl().clone()).collect();
    let orbs = orbits(sys, &weyl, &layer)?;
    let pos: BTreeMap<u32, usize> = layer.iter().enumerate().map(|(i, &l)| (l, i)).collect();
    let mut closure: Option<Vec<(Vec<u16>, WeylElement)>> = None;
    let mut out = Vec::new();
    for orbit in orbs {
        let mut pair = None;
        'search: for (a, &i) in orbit.iter().enumerate() {
            for &j in &orbit[a + 1..] {
                if let Some(k) = par.sum(par.position(i)?, par.position(j)?) {
                    pair = Some((i, j, par.label(k)));
                    break 'search;
                }
            }
        }
        let Some((i, j, correction)) = pair else {
            continue;
        };
        let e_o = par.basis_vector(&orbit)?;
        if gens.iter().any(|g| par.ad_action(g, &e_o).map_or(true, |v| v != e_o)) {
            continue;
        }
        if !lift_obstructed(par, gens, &orbit)? {
            continue;
        }
        let elems = closure.get_or_insert_with(|| label_closure(sys, &weyl, &layer, &pos));
        let (pi, pj) = (pos[&i], pos[&j]);
        let swapper = elems
            .iter()
            .find(|(img, _)| img[pi] as usize == pj && img[pj] as usize == pi)
            .map(|(_, w)| {
                w.levi_permutation(sys)
                    .map_or_else(|| w.word_letters(sys).join(" "), |p| p.to_string())
            });
        out.push(Certificate {
            orbit,
            pair: (i, j),
            correction,
            swapper,
        });
    }
    Ok(out)
}

/// Whether no `y` of σ-weight ≥ 2 makes `Π_O ε_i(1) · y` fixed by K.
pub fn lift_obstructed<F: Char2Field>(par: &Parabolic<F>, gens: &[GroupElement<F>], orbit: &[u32]) -> Result<bool> {
    let higher: Vec<u32> = par
        .labels()
        .iter()
        .copied()
        .filter(|&l| par.weight(par.position(l).expect("label")) >= 2)
        .collect();
    let mut factors: Vec<(u32, MPoly<F>)> = orbit.iter().map(|&l| (l, MPoly::constant(F::one()))).collect();
    factors.extend(higher.iter().map(|&l| (l, MPoly::var(l))));
    let u = par.collect(&factors)?;
    let mut eqs = Vec::new();
    for g in gens {
        let img = par.conjugate(g, &u);
        for p in 0..par.dim() {
            let e = img.at(p).clone() + u.at(p).clone();
            if !e.is_zero() {
                eqs.push(e);
            }
        }
    }
    let sys = PolySystem::new(higher, eqs)?;
    Ok(!solve(&sys, &weight_priority(par))?.consistent)
}

/// The permutation group induced on `layer`, each image paired with one
/// Weyl element realizing it.
fn label_closure(
    sys: &crate::rootdata::LabeledRootSystem,
    gens: &[WeylElement],
    layer: &[u32],
    pos: &BTreeMap<u32, usize>,
) -> Vec<(Vec<u16>, WeylElement)> {
    let act = |w: &WeylElement| -> Vec<u16> {
        layer
            .iter()
            .map(|&l| {
                let img = sys.label(w.apply(sys.root_of_label(l).expect("label"))).expect("labeled");
                pos[&img] as u16
            })
            .collect()
    };
    let id = WeylElement::identity(sys);
    let mut seen: HashSet<Vec<u16>> = HashSet::from([act(&id)]);
    let mut all = vec![(act(&id), id)];
    let mut i = 0;
    while i < all.len() {
        for g in gens {
            let w = all[i].1.compose(g);
            let img = act(&w);
            if seen.insert(img.clone()) {
                all.push((img, w));
            }
        }
        i += 1;
    }
    all
}

pub fn separability_report<F: Char2Field>(
    par: &Parabolic<F>,
    gens: &[GroupElement<F>],
    class_id: Option<usize>,
) -> Result<SeparabilityReport> {
    let tangent_dim = lie_centralizer(par, gens)?.len();
    let sol = group_centralizer(par, gens)?;
    let group_dim = sol.dim.ok_or_else(|| EngineError::Solver("no dimension".into()))?;
    if tangent_dim < group_dim {
        return Err(EngineError::Solver(format!(
            "tangent dimension {tangent_dim} below group dimension {group_dim}"
        )));
    }
    Ok(SeparabilityReport {
        class_id,
        tangent_dim,
        group_dim,
        method: sol.method,
        separable: tangent_dim == group_dim,
        normal_form: sol.normal_form(),
        certificates: find_certificates(par, gens)?,
    })
}

/// Lifts a class of subgroups of S_n to Weyl representatives in P.
pub fn lift_class<F: Char2Field>(par: &Parabolic<F>, class: &SubgroupClass) -> Result<Vec<GroupElement<F>>> {
    class
        .generators
        .iter()
        .map(|p| par.from_weyl(WeylElement::from_perm(par.system(), p)?))
        .collect()
}

/// Certificates for every class, in class order.
pub fn certificate_scan<F: Char2Field>(
    par: &Parabolic<F>,
    classes: &[SubgroupClass],
) -> Result<Vec<(usize, Vec<Certificate>)>> {
    classes
        .par_iter()
        .map(|c| Ok((c.id, find_certificates(par, &lift_class(par, c)?)?)))
        .collect()
}

/// Separability reports for every class, in class order.
pub fn separability_scan<F: Char2Field>(
    par: &Parabolic<F>,
    classes: &[SubgroupClass],
) -> Result<Vec<SeparabilityReport>> {
    classes
        .par_iter()
        .map(|c| separability_report(par, &lift_class(par, c)?, Some(c.id)))
        .collect()
}
