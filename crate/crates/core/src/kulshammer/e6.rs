use std::collections::{HashSet, VecDeque};

use num_integer::Integer;
use serde::{Deserialize, Serialize};

use super::presentation::{FinitePresentation, GroupOps, RelationCheck};
use crate::centralizer::{solve, PolySystem};
use crate::chevalley::{weyl_fixing_torus, GroupElement, MPoly, Parabolic, TorusElement};
use crate::crcheck::case_spec;
use crate::error::{EngineError, Result};
use crate::field::{Char2Field, Matrix};
use crate::rootdata::{Root, RootType};
use crate::weyl::{full_weyl_group, WeylElement};
use crate::Rational;

impl<F: Char2Field> GroupOps<GroupElement<F>> for Parabolic<F> {
    fn mul(&self, g: &GroupElement<F>, h: &GroupElement<F>) -> GroupElement<F> {
        Parabolic::mul(self, g, h)
    }
    fn inv(&self, g: &GroupElement<F>) -> GroupElement<F> {
        Parabolic::inv(self, g)
    }
    fn identity(&self) -> GroupElement<F> {
        Parabolic::identity(self)
    }
    fn same(&self, g: &GroupElement<F>, h: &GroupElement<F>) -> bool {
        g == h
    }
}

const GAMMA_GENS: &[&str] = &["r1", "r2", "r3", "r4", "r5", "s1", "s2", "z"];

/// Γ = F × C_2. The displayed presentation omits `z^2`, which C_2 forces.
const GAMMA_RELATIONS: &[&str] = &[
    "r1^3",
    "r2^3",
    "r3^3",
    "r4^3",
    "r5^3",
    "s1^3",
    "s2^2",
    "z^2",
    "s1 r1 s1^-1 = (r1 r2 r3)^-1",
    "s1 r2 s1^-1 = r1 r2 r3 r4 r5",
    "s1 r3 s1^-1 = (r2 r3 r4 r5)^-1",
    "s1 r4 s1^-1 = r2",
    "s1 r5 s1^-1 = r3 r4",
    "s2 r1 s2^-1 = (r3 r4)^-1",
    "s2 r2 s2^-1 = r2^-1",
    "s2 r3 s2^-1 = r2 r3 r4 r5",
    "s2 r4 s2^-1 = (r1 r2 r3 r4 r5)^-1",
    "s2 r5 s2^-1 = r1 r2 r3",
    "[r1, r2]",
    "[r1, r3]",
    "[r1, r4]",
    "[r1, r5]",
    "[r2, r3]",
    "[r2, r4]",
    "[r2, r5]",
    "[r3, r4]",
    "[r3, r5]",
    "[r4, r5]",
    "(s1^2 s2)^2",
    "[r1, z]",
    "[r2, z]",
    "[r3, z]",
    "[r4, z]",
    "[r5, z]",
    "[s1, z]",
    "[s2, z]",
];

/// The relations of H′ with `q·t` read as `q t q⁻¹`; the right-action
/// reading replaces each `q x q^-1` by `q^-1 x q`.
const H_RELATIONS: &[&str] = &[
    "t1^3",
    "t2^3",
    "t3^3",
    "t4^3",
    "t5^3",
    "q1^3",
    "q2^2",
    "q1 t1 q1^-1 = (t1 t2 t3)^-1",
    "q1 t2 q1^-1 = t1 t2 t3 t4 t5",
    "q1 t3 q1^-1 = (t2 t3 t4 t5)^-1",
    "q1 t4 q1^-1 = t2",
    "q1 t5 q1^-1 = t3 t4",
    "q2 t1 q2^-1 = (t3 t4)^-1",
    "q2 t2 q2^-1 = t2^-1",
    "q2 t3 q2^-1 = t2 t3 t4 t5",
    "q2 t4 q2^-1 = (t1 t2 t3 t4 t5)^-1",
    "q2 t5 q2^-1 = t1 t2 t3",
    "[t1, t2]",
    "[t1, t3]",
    "[t1, t4]",
    "[t1, t5]",
    "[t2, t3]",
    "[t2, t4]",
    "[t2, t5]",
    "[t3, t4]",
    "[t3, t5]",
    "[t4, t5]",
    "(q1^2 q2)^2",
];

fn right_reading(rel: &str) -> String {
    let mut s = rel.to_string();
    for q in ["q1", "q2"] {
        if let Some(rest) = s.strip_prefix(&format!("{q} ")) {
            if let Some((x, tail)) = rest.split_once(&format!(" {q}^-1")) {
                s = format!("{q}^-1 {x} {q}{tail}");
            }
        }
    }
    s
}

/// A representation given by the images of the presentation generators.
#[derive(Clone, Debug)]
pub struct Representation<G> {
    pub a: String,
    pub images: Vec<G>,
}

/// The family ρ_a of Γ in the E6 parabolic, with t_i = α_i∨(c) for the
/// five Levi simple roots and q_1, q_2 from Case 4.
#[derive(Clone, Debug)]
pub struct E6Family<F: Char2Field> {
    par: Parabolic<F>,
    c: F,
    t: Vec<GroupElement<F>>,
    q1: GroupElement<F>,
    q2: GroupElement<F>,
    gamma: FinitePresentation,
}

/// 2×2 determinant-one matrices: the root subgroup pair ±21 generates
/// G_21 ≅ SL_2 with ε_21(x) = [[1,x],[0,1]] and 21∨(y) = diag(y, y⁻¹).
pub type Sl2<F> = [[F; 2]; 2];

fn mul2<F: Char2Field>(x: &Sl2<F>, y: &Sl2<F>) -> Sl2<F> {
    let mut r = [[F::zero(); 2]; 2];
    for i in 0..2 {
        for j in 0..2 {
            r[i][j] = x[i][0] * y[0][j] + x[i][1] * y[1][j];
        }
    }
    r
}

fn inv2<F: Char2Field>(x: &Sl2<F>) -> Sl2<F> {
    [[x[1][1], x[0][1]], [x[1][0], x[0][0]]]
}

fn upper<F: Char2Field>(a: F) -> Sl2<F> {
    [[F::one(), a], [F::zero(), F::one()]]
}

pub fn sl2_elements<F: Char2Field>() -> Vec<Sl2<F>> {
    let el = F::elements();
    let mut out = Vec::new();
    for &a in &el {
        for &b in &el {
            for &c in &el {
                for &d in &el {
                    if a * d + b * c == F::one() {
                        out.push([[a, b], [c, d]]);
                    }
                }
            }
        }
    }
    out
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct TorusTupleCentralizer {
    /// Signed labels of the roots killed by every t_i.
    pub roots: Vec<i64>,
    pub weyl_stabilizer: usize,
    /// Every stabilizing Weyl element is 1 or the reflection in root 21.
    pub weyl_in_s21: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E6Nonconjugacy {
    pub a: String,
    pub b: String,
    /// Some m ∈ SL_2(GF(q)) carries (ε(a), ε(1)) to (ε(b), ε(1)).
    pub conjugator: Option<[[String; 2]; 2]>,
    /// The conjugation equations over the closure have no solution.
    pub system_inconsistent: bool,
    pub equations: Vec<String>,
    /// A conjugator was replayed on all eight generators in the group model.
    pub witness_replayed: bool,
    pub nonconjugate: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct E6Report {
    pub field_degree: u32,
    pub c: String,
    pub order_h_prime: usize,
    pub order_torus_part: usize,
    pub relations: Vec<RelationCheck>,
    /// Whether every relation also holds when `q·x` means `q⁻¹ x q`.
    pub right_reading_holds: bool,
    pub rho_well_defined: bool,
    pub sylow_conjugates: bool,
    pub q2_centralizes_g21: bool,
    pub centralizer: TorusTupleCentralizer,
    /// Basis of the cocharacters fixed by q_1 and q_2, in simple coroot
    /// coordinates (internal order).
    pub fixed_cocharacters: Vec<Vec<i64>>,
    /// Torus elements over the field commuting with q_1, q_2 all lie in
    /// Z(G)·21∨; the central factor acts trivially on every ρ_a.
    pub fixed_torus_in_g21: bool,
    pub nonconjugacy: Vec<E6Nonconjugacy>,
}

impl<F: Char2Field> E6Family<F> {
    pub fn new() -> Result<Self> {
        let spec = case_spec(RootType::E6, 4)?;
        let par: Parabolic<F> = Parabolic::new(spec.system()?)?;
        let c = F::element_of_order(3)?;
        let sys = par.system();
        let t = sys
            .levi_simples()
            .iter()
            .map(|&i| {
                let mut v = vec![0; sys.rank()];
                v[i] = 1;
                par.from_torus(TorusElement::coroot(&Root(v), c)?)
            })
            .collect::<Result<Vec<_>>>()?;
        let q1 = par.from_weyl(WeylElement::parse_word(sys, spec.words[0])?)?;
        let q2 = par.from_weyl(WeylElement::parse_word(sys, spec.words[1])?)?;
        Ok(E6Family {
            gamma: FinitePresentation::new(GAMMA_GENS, GAMMA_RELATIONS)?,
            par,
            c,
            t,
            q1,
            q2,
        })
    }

    pub fn parabolic(&self) -> &Parabolic<F> {
        &self.par
    }

    pub fn gamma(&self) -> &FinitePresentation {
        &self.gamma
    }

    fn eps21(&self, x: F) -> Result<GroupElement<F>> {
        Ok(self.par.from_unipotent(self.par.epsilon(21, x)?))
    }

    /// Order of the subgroup generated by Levi elements, by closure.
    pub fn closure_order(&self, gens: &[GroupElement<F>]) -> Result<usize> {
        if gens.iter().any(|g| !g.is_levi()) {
            return Err(EngineError::UnipotentPart);
        }
        let key = |g: &GroupElement<F>| (g.weyl().clone(), *g.torus());
        let id = self.par.identity();
        let mut seen = HashSet::from([key(&id)]);
        let mut queue = VecDeque::from([id]);
        while let Some(x) = queue.pop_front() {
            for g in gens {
                let y = self.par.mul(&x, g);
                if seen.insert(key(&y)) {
                    queue.push_back(y);
                }
            }
        }
        Ok(seen.len())
    }

    pub fn h_prime(&self) -> Vec<GroupElement<F>> {
        let mut g = self.t.clone();
        g.push(self.q1.clone());
        g.push(self.q2.clone());
        g
    }

    pub fn h_prime_relations(&self) -> Result<(Vec<RelationCheck>, bool)> {
        let names = ["t1", "t2", "t3", "t4", "t5", "q1", "q2"];
        let left = FinitePresentation::new(&names, H_RELATIONS)?.check(&self.par, &self.h_prime())?;
        let right: Vec<String> = H_RELATIONS.iter().map(|r| right_reading(r)).collect();
        let right_refs: Vec<&str> = right.iter().map(String::as_str).collect();
        let right_ok = FinitePresentation::new(&names, &right_refs)?
            .check(&self.par, &self.h_prime())?
            .iter()
            .all(|c| c.holds);
        Ok((left, right_ok))
    }

    /// ρ_a(r_i) = t_i, ρ_a(s_1) = q_1, ρ_a(s_2) = q_2 ε_21(a), ρ_a(z) = ε_21(1).
    pub fn rho(&self, a: F) -> Result<Representation<GroupElement<F>>> {
        let mut images = self.t.clone();
        images.push(self.q1.clone());
        images.push(self.par.mul(&self.q2, &self.eps21(a)?));
        images.push(self.eps21(F::one())?);
        Ok(Representation { a: a.to_hex(), images })
    }

    /// u(√a) = ε_7(√a) ε_8(√a).
    pub fn sylow_conjugator(&self, a: F) -> Result<GroupElement<F>> {
        let r = a.sqrt();
        Ok(self.par.from_unipotent(self.par.collect(&[(7, r), (8, r)])?))
    }

    fn conj(&self, g: &GroupElement<F>, x: &GroupElement<F>) -> GroupElement<F> {
        self.par.mul(&self.par.mul(g, x), &self.par.inv(g))
    }

    /// u(√a) carries ρ_b|Γ_2 to ρ_{a+b}|Γ_2.
    pub fn sylow_check(&self, a: F, b: F) -> Result<bool> {
        let u = self.sylow_conjugator(a)?;
        let rb = self.rho(b)?;
        let rab = self.rho(a + b)?;
        Ok(self.conj(&u, &rb.images[6]) == rab.images[6] && self.conj(&u, &rb.images[7]) == rab.images[7])
    }

    pub fn torus_tuple_centralizer(&self) -> Result<TorusTupleCentralizer> {
        let sys = self.par.system();
        let ts: Vec<TorusElement<F>> = self.t.iter().map(|g| *g.torus()).collect();
        let mut roots = Vec::new();
        for idx in 0..sys.num_roots() {
            if ts.iter().all(|t| t.eval(sys, sys.root(idx)).is_one()) {
                let signed = match sys.label(idx) {
                    Some(l) => l as i64,
                    None => -(sys.label(sys.neg(idx)).ok_or(EngineError::UnknownLabel(0))? as i64),
                };
                roots.push(signed);
            }
        }
        roots.sort_by_key(|l| (l.abs(), *l < 0));
        let r21 = sys.root_of_label(21).ok_or(EngineError::UnknownLabel(21))?;
        let stab = weyl_fixing_torus(sys, &full_weyl_group(sys), &ts);
        let weyl_in_s21 = stab
            .iter()
            .all(|w| w.is_identity() || (0..sys.num_roots()).all(|z| w.apply(z) == sys.reflect_idx(r21, z)));
        Ok(TorusTupleCentralizer {
            roots,
            weyl_stabilizer: stab.len(),
            weyl_in_s21,
        })
    }

    /// The cocharacter sublattice fixed by q_1 and q_2, over Q.
    pub fn fixed_cocharacters(&self) -> Vec<Vec<i64>> {
        let sys = self.par.system();
        let n = sys.rank();
        let mut rows = Vec::new();
        for q in [&self.q1, &self.q2] {
            // column i of the action is w(α_i∨)
            let cols: Vec<Root> = (0..n).map(|i| q.weyl().simple_image(sys, i)).collect();
            for r in 0..n {
                rows.push(
                    (0..n)
                        .map(|i| Rational::from_integer(cols[i].0[r] as i64 - i64::from(r == i)))
                        .collect(),
                );
            }
        }
        Matrix::from_rows(rows)
            .kernel()
            .into_iter()
            .map(|v| {
                let l = v.iter().fold(1i64, |acc, x| acc.lcm(x.denom()));
                let ints: Vec<i64> = v.iter().map(|x| (x * Rational::from_integer(l)).to_integer()).collect();
                let g = ints.iter().fold(0i64, |acc, &x| acc.gcd(&x));
                ints.iter().map(|x| x / g.max(1)).collect()
            })
            .collect()
    }

    /// Torus elements over the field commuting with q_1 and q_2.
    pub fn fixed_torus(&self) -> Vec<TorusElement<F>> {
        let sys = self.par.system();
        let n = sys.rank();
        let nz = F::nonzero_elements();
        let mut out = Vec::new();
        let total = nz.len().pow(n as u32);
        for code in 0..total {
            let mut c = code;
            let coords: Vec<F> = (0..n)
                .map(|_| {
                    let x = nz[c % nz.len()];
                    c /= nz.len();
                    x
                })
                .collect();
            let t = TorusElement::new(&coords).expect("nonzero coordinates");
            if [&self.q1, &self.q2].iter().all(|q| t.conjugate_by(sys, q.weyl()) == t) {
                out.push(t);
            }
        }
        out
    }

    /// Whether `t = z · 21∨(x)` with z central (all roots trivial on z).
    fn in_centre_times_coroot21(&self, t: &TorusElement<F>) -> Result<bool> {
        let sys = self.par.system();
        let r21 = sys.root(sys.root_of_label(21).ok_or(EngineError::UnknownLabel(21))?).clone();
        for x in F::nonzero_elements() {
            let z = t.mul(&TorusElement::coroot(&r21, x)?.inverse());
            if (0..sys.num_roots()).all(|i| z.eval(sys, sys.root(i)).is_one()) {
                return Ok(true);
            }
        }
        Ok(false)
    }

    /// Non-conjugacy of ρ_a and ρ_b along the proof: the torus part is
    /// forced into G_21, and the question becomes whether some
    /// m ∈ SL_2 carries (ε(a), ε(1)) to (ε(b), ε(1)).
    pub fn nonconjugacy(&self, a: F, b: F) -> Result<E6Nonconjugacy> {
        let ea = upper(a);
        let eb = upper(b);
        let e1 = upper(F::one());
        let found = sl2_elements::<F>().into_iter().find(|m| {
            let mi = inv2(m);
            mul2(&mul2(m, &ea), &mi) == eb && mul2(&mul2(m, &e1), &mi) == e1
        });

        // m = [[x1, x2], [x3, x4]]: m ε(1) = ε(1) m, m ε(a) = ε(b) m, det m = 1
        let v = |i| MPoly::<F>::var(i);
        let k = |x: F| MPoly::constant(x);
        let eqs = vec![
            v(3),
            v(1) + v(4),
            v(3) * k(b),
            v(1) * k(a) + v(4) * k(b),
            v(3) * k(a),
            v(1) * v(4) + v(2) * v(3) + k(F::one()),
        ];
        let equations: Vec<String> = eqs.iter().map(|e| format!("{e} = 0")).collect();
        let sys = PolySystem::new(vec![1, 2, 3, 4], eqs)?;
        let system_inconsistent = !solve(&sys, &|v| (0, v))?.consistent;

        let mut witness_replayed = false;
        if let Some(m) = &found {
            if m[1][0].is_zero() {
                // m = ε_21(m01 / m00) 21∨(m00)
                let r21 = self.par.system().root(self.par.system().root_of_label(21).expect("label 21")).clone();
                let d = self.par.from_torus(TorusElement::coroot(&r21, m[0][0])?)?;
                let g = self.par.mul(&self.eps21(m[0][1] * m[1][1])?, &d);
                let ra = self.rho(a)?;
                let rb = self.rho(b)?;
                witness_replayed = ra.images.iter().zip(&rb.images).all(|(x, y)| self.conj(&g, x) == *y);
            }
        }
        if found.is_some() == system_inconsistent {
            return Err(EngineError::Solver(format!(
                "SL_2 search and conjugation system disagree for a={}, b={}",
                a.to_hex(),
                b.to_hex()
            )));
        }
        Ok(E6Nonconjugacy {
            a: a.to_hex(),
            b: b.to_hex(),
            conjugator: found.map(|m| m.map(|r| r.map(|x| x.to_hex()))),
            system_inconsistent,
            equations,
            witness_replayed,
            nonconjugate: system_inconsistent,
        })
    }

    pub fn report(&self) -> Result<E6Report> {
        let (relations, right_reading_holds) = self.h_prime_relations()?;
        let elems = F::elements();
        let rho_well_defined = elems
            .iter()
            .map(|&a| Ok(self.gamma.check(&self.par, &self.rho(a)?.images)?.iter().all(|c| c.holds)))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|x| x);
        let sylow_conjugates = elems
            .iter()
            .map(|&a| self.sylow_check(a, F::zero()))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|x| x);
        let q2_centralizes_g21 = elems
            .iter()
            .map(|&x| Ok(self.conj(&self.q2, &self.eps21(x)?) == self.eps21(x)?))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|x| x)
            && {
                let sys = self.par.system();
                let r21 = sys.root_of_label(21).ok_or(EngineError::UnknownLabel(21))?;
                self.q2.weyl().apply(r21) == r21
            };
        let fixed_torus_in_g21 = self
            .fixed_torus()
            .iter()
            .map(|t| self.in_centre_times_coroot21(t))
            .collect::<Result<Vec<bool>>>()?
            .into_iter()
            .all(|x| x);
        let mut nonconjugacy = Vec::new();
        for &a in &elems {
            for &b in &elems {
                nonconjugacy.push(self.nonconjugacy(a, b)?);
            }
        }
        Ok(E6Report {
            field_degree: F::DEGREE,
            c: self.c.to_hex(),
            order_h_prime: self.closure_order(&self.h_prime())?,
            order_torus_part: self.closure_order(&self.t)?,
            relations,
            right_reading_holds,
            rho_well_defined,
            sylow_conjugates,
            q2_centralizes_g21,
            centralizer: self.torus_tuple_centralizer()?,
            fixed_cocharacters: self.fixed_cocharacters(),
            fixed_torus_in_g21,
            nonconjugacy,
        })
    }
}

impl E6Report {
    pub fn all_checks_pass(&self) -> bool {
        self.order_h_prime == 1458
            && self.relations.iter().all(|c| c.holds)
            && self.rho_well_defined
            && self.sylow_conjugates
            && self.q2_centralizes_g21
            && self.centralizer.roots == [21, -21]
            && self.centralizer.weyl_in_s21
            && self.fixed_torus_in_g21
            && self.nonconjugacy.iter().all(|n| (n.a == n.b) != n.nonconjugate)
    }
}
