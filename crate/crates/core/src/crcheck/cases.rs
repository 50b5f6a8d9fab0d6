use std::collections::BTreeSet;

use serde::{Deserialize, Serialize};

use crate::centralizer::{separability_report, solve, weight_priority, Certificate, PolySystem};
use crate::chevalley::{GroupElement, MPoly, Parabolic, TorusElement};
use crate::error::{EngineError, Result};
use crate::field::Char2Field;
use crate::rootdata::{
    standard_levi_cocharacter, EmbeddedTable, LabeledRootSystem, Root, RootType, E6_POSITIVE, E7_CASE2, E8_CASE1,
    E8_CASE2,
};
use crate::weyl::{classify_subgroups, match_class, orbits, parse_cycles, Perm, PermGroup, SubgroupClass, WeylElement};

use super::module::{is_gcr, levi_matrix_model};

/// One example from the tables: K′ ⊂ W_L, the torus element t and the
/// support of the curve v(a) = Π ε_i(a).
#[derive(Clone, Debug)]
pub struct CaseSpec {
    pub ty: RootType,
    pub case: usize,
    pub table: &'static EmbeddedTable,
    /// Generators of K′ as listed in the table.
    pub perms: &'static [&'static str],
    /// Explicit words for the generators where the text gives them.
    pub words: &'static [&'static str],
    /// t as a coroot combination evaluated at an element of order 3.
    pub t: &'static [(&'static str, i64)],
    /// `None`: use the first certificate orbit.
    pub v_support: Option<&'static [u32]>,
    pub order: usize,
}

const AE: &[(&str, i64)] = &[("a", 1), ("e", 1)];
const A: &[(&str, i64)] = &[("a", 1)];
const AB: &[(&str, i64)] = &[("a", 1), ("b", 1)];
const O7: &[u32] = &[7, 8];
const O10: &[u32] = &[10, 13];
const O11: &[u32] = &[11, 12];

const fn e6(case: usize, perms: &'static [&'static str], order: usize, t: &'static [(&'static str, i64)], v: &'static [u32]) -> CaseSpec {
    CaseSpec {
        ty: RootType::E6,
        case,
        table: &E6_POSITIVE,
        perms,
        words: &[],
        t,
        v_support: Some(v),
        order,
    }
}

pub const CASES: &[CaseSpec] = &[
    e6(1, &["(1 5)(2 3)(4 6)"], 2, AE, O7),
    e6(2, &["(1 5)(4 6)", "(1 4 5 6)(2 3)"], 4, A, O10),
    e6(3, &["(2 4)(3 6)", "(1 5)(2 6)(3 4)"], 4, AE, O7),
    CaseSpec {
        words: &["a b g b a b g b g d e d g e", "a b g d g b a b d e d"],
        ..e6(4, &["(1 4 2)(3 6 5)", "(1 5)(2 3)(4 6)"], 6, AE, O7)
    },
    e6(5, &["(1 5)(2 6)(3 4)", "(1 4 2)(3 6 5)"], 6, AE, O7),
    e6(6, &["(4 6)", "(1 4)(2 3)(5 6)", "(1 5)(4 6)"], 8, A, O10),
    e6(7, &["(1 5)(2 6)(3 4)", "(2 4)(3 6)", "(1 2 4)(3 5 6)"], 12, AE, O7),
    e6(8, &["(1 4)(2 3)(5 6)", "(1 3 5)(2 4 6)", "(2 4 6)"], 18, AB, O11),
    e6(9, &["(1 4)(2 3)(5 6)", "(3 5)(4 6)", "(1 3 5)", "(2 4 6)"], 36, AB, O11),
    e6(10, &["(1 4 5 6)(2 3)", "(3 5)(4 6)", "(1 3 5)", "(2 4 6)"], 36, AB, O11),
    e6(11, &["(1 3)", "(1 4)(2 3)(5 6)", "(1 3)(4 6)", "(1 5 3)", "(2 6 4)"], 72, AB, O11),
    CaseSpec {
        ty: RootType::E7,
        case: 1,
        table: &E7_CASE2,
        perms: &["(2 5)(3 7)(4 6)", "(1 4 3 2 5 7 6)"],
        words: &[],
        t: &[],
        v_support: None,
        order: 14,
    },
    CaseSpec {
        ty: RootType::E7,
        case: 2,
        table: &E7_CASE2,
        perms: &["(2 6 7)(3 5 4)", "(2 5)(3 7)(4 6)", "(1 6 7 5 2 3 4)"],
        words: &["e g a", "a g a b g a b g h e d g b"],
        t: &[],
        v_support: Some(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14]),
        order: 42,
    },
    CaseSpec {
        ty: RootType::E8,
        case: 1,
        table: &E8_CASE1,
        perms: &["(2 6)(4 5)(7 8)", "(1 4 2 8 7 6 5)"],
        words: &["b g d e d g b d x", "a b g b a b d e h x h e d g b x h e"],
        t: &[],
        v_support: Some(&[1, 2, 3, 4, 5, 6, 7]),
        order: 14,
    },
    CaseSpec {
        ty: RootType::E8,
        case: 2,
        table: &E8_CASE2,
        perms: &["(1 7 5)(2 6 8)", "(1 2)(5 8)(6 7)", "(1 2 7 5 4 8 6)"],
        words: &[
            "a b g d e h e d g b a e h e b g d e d g b h x h",
            "a e h x h e h",
            "a b g d e h e d g b e x h e d h x h",
        ],
        t: &[],
        v_support: Some(&[1, 2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12, 13, 14]),
        order: 42,
    },
];

pub fn case_spec(ty: RootType, case: usize) -> Result<&'static CaseSpec> {
    CASES
        .iter()
        .find(|c| c.ty == ty && c.case == case)
        .ok_or_else(|| EngineError::UnknownCase {
            ty: ty.to_string(),
            case,
        })
}

impl CaseSpec {
    pub fn id(&self) -> String {
        format!("{}-{}", self.ty, self.case)
    }

    pub fn system(&self) -> Result<LabeledRootSystem> {
        LabeledRootSystem::with_table(self.table)
    }

    pub fn degree(&self) -> usize {
        self.ty.levi_degree().expect("exceptional type")
    }

    pub fn perm_generators(&self) -> Result<Vec<Perm>> {
        self.perms.iter().map(|p| parse_cycles(self.degree(), p)).collect()
    }

    /// Weyl representatives of the generators of K′: the given words, or
    /// lifts of the table permutations.
    pub fn weyl_generators(&self, sys: &LabeledRootSystem) -> Result<Vec<WeylElement>> {
        if self.words.is_empty() {
            self.perm_generators()?
                .iter()
                .map(|p| WeylElement::from_perm(sys, p))
                .collect()
        } else {
            self.words.iter().map(|w| WeylElement::parse_word(sys, w)).collect()
        }
    }

    pub fn torus<F: Char2Field>(&self, sys: &LabeledRootSystem) -> Result<Option<TorusElement<F>>> {
        if self.t.is_empty() {
            return Ok(None);
        }
        let b = F::element_of_order(3)?;
        let mut v = vec![0; sys.rank()];
        for &(l, k) in self.t {
            let i = sys.letter_index(l).ok_or_else(|| EngineError::NotALeviLetter(l.to_string()))?;
            v[i] += k as i32;
        }
        TorusElement::coroot(&Root(v), b).map(Some)
    }

    /// Generators of K′ (Weyl part only).
    pub fn k_prime<F: Char2Field>(&self, par: &Parabolic<F>) -> Result<Vec<GroupElement<F>>> {
        self.weyl_generators(par.system())?
            .into_iter()
            .map(|w| par.from_weyl(w))
            .collect()
    }

    /// Generators of K = ⟨K′, t⟩.
    pub fn k<F: Char2Field>(&self, par: &Parabolic<F>) -> Result<Vec<GroupElement<F>>> {
        let mut gens = self.k_prime(par)?;
        if let Some(t) = self.torus(par.system())? {
            gens.push(par.from_torus(t)?);
        }
        Ok(gens)
    }
}

/// `v(a) g v(a)⁻¹` for each generator, with `v(a) = Π_{support} ε_i(a)`.
pub fn build_h<F: Char2Field>(par: &Parabolic<F>, k: &[GroupElement<F>], support: &[u32], a: F) -> Result<Vec<GroupElement<F>>> {
    let factors: Vec<(u32, F)> = support.iter().map(|&l| (l, a)).collect();
    let v = par.from_unipotent(par.collect(&factors)?);
    let vinv = par.inv(&v);
    Ok(k.iter().map(|g| par.mul(&par.mul(&v, g), &vinv)).collect())
}

/// Outcome of the refutation of M-complete reducibility for one H.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NonMcrRecord {
    pub a: String,
    /// Every generator lies in P_λ(M): no coordinates of odd σ-weight.
    pub h_in_m: bool,
    /// No m ∈ R_u(P_λ(M)) conjugates the generators to their c_λ-images.
    pub inconsistent: bool,
}

impl NonMcrRecord {
    pub fn not_mcr(&self) -> bool {
        self.h_in_m && self.inconsistent
    }
}

const GCR_JUSTIFICATION: &str = "G-cr iff L-cr iff [L,L]-cr iff the natural SL_n-module is semisimple; \
semisimplicity over GF(2^m) persists over the algebraic closure because finite fields are perfect";

/// The labels of σ-weight 2: inside Ψ(M) these are exactly the roots of
/// positive λ-weight.
pub fn m_radical_labels<F: Char2Field>(par: &Parabolic<F>) -> Vec<u32> {
    par.system().labels_of_weight(2)
}

/// Solves `m h_i m⁻¹ = c_λ(h_i)` for `m` supported on the σ-weight-2 roots
/// (the unipotent radical of P_λ ∩ M). Returns true when there is no
/// solution over the algebraic closure.
pub fn non_mcr_check<F: Char2Field>(par: &Parabolic<F>, h: &[GroupElement<F>]) -> Result<bool> {
    let lambda = standard_levi_cocharacter(par.system())?;
    let m_labels = m_radical_labels(par);
    let m = par.from_unipotent(par.symbolic(&m_labels)?);
    let minv = par.inv(&m);
    let mut eqs = Vec::new();
    for g in h {
        let lhs = par.mul(&par.mul(&m, &par.lift::<MPoly<F>>(g)), &minv);
        let rhs = par.lift::<MPoly<F>>(&par.c_lambda(g, &lambda));
        if lhs.weyl() != rhs.weyl() || lhs.torus() != rhs.torus() {
            return Err(EngineError::Solver("Levi parts differ after conjugation".into()));
        }
        for p in 0..par.dim() {
            let e = lhs.unipotent().at(p).clone() + rhs.unipotent().at(p).clone();
            if !num_traits::Zero::is_zero(&e) {
                eqs.push(e);
            }
        }
    }
    let sys = PolySystem::new(m_labels, eqs)?;
    Ok(!solve(&sys, &weight_priority(par))?.consistent)
}

fn in_m<F: Char2Field>(par: &Parabolic<F>, g: &GroupElement<F>) -> bool {
    (0..par.dim()).all(|p| par.weight(p) % 2 == 0 || g.unipotent().at(p).is_zero())
}

pub fn non_mcr_record<F: Char2Field>(
    par: &Parabolic<F>,
    k: &[GroupElement<F>],
    support: &[u32],
    a: F,
) -> Result<NonMcrRecord> {
    let h = build_h(par, k, support, a)?;
    Ok(NonMcrRecord {
        a: a.to_hex(),
        h_in_m: h.iter().all(|g| in_m(par, g)),
        inconsistent: non_mcr_check(par, &h)?,
    })
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct Dims {
    pub tangent: usize,
    pub group: usize,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct CaseReport {
    pub case: String,
    pub field_degree: u32,
    pub order: usize,
    pub generated_order: usize,
    pub matches_table_class: bool,
    pub orbits: Vec<Vec<u32>>,
    pub certificates: Vec<Certificate>,
    /// For K = ⟨K′, t⟩.
    pub dims: Dims,
    /// For K′ alone.
    pub weyl_dims: Dims,
    pub gcr: bool,
    pub gcr_justification: String,
    /// Ψ(R_u(P_λ(M))): labels of positive λ-weight inside Ψ(M).
    pub m_radical: Vec<u32>,
    pub v_support: Vec<u32>,
    pub non_mcr: Vec<NonMcrRecord>,
    /// v(a) supported on the certificate pair only (E7, E8).
    pub pair_variant: Option<Vec<NonMcrRecord>>,
    pub transcripts: Vec<String>,
}

impl CaseReport {
    /// The pattern of the tables: non-separable, G-cr, and not M-cr for
    /// every nonzero a tried.
    pub fn confirms_table(&self) -> bool {
        self.matches_table_class
            && self.dims.tangent > self.dims.group
            && self.gcr
            && !self.certificates.is_empty()
            && !self.non_mcr.is_empty()
            && self.non_mcr.iter().all(NonMcrRecord::not_mcr)
    }
}

/// Runs orbits, certificates, centralizer dimensions, the G-cr test and
/// the non-M-cr refutation for every nonzero `a` in F.
pub fn verify_case<F: Char2Field>(spec: &CaseSpec) -> Result<CaseReport> {
    let sys = spec.system()?;
    let par: Parabolic<F> = Parabolic::new(sys)?;
    let sys = par.system();
    let kp = spec.k_prime(&par)?;
    let k = spec.k(&par)?;
    let n = spec.degree();

    let images: Vec<Perm> = kp
        .iter()
        .map(|g| g.weyl().levi_permutation(sys).ok_or(EngineError::DomainNotStable))
        .collect::<Result<_>>()?;
    let generated = PermGroup::generate(n, &images);
    let table = PermGroup::generate(n, &spec.perm_generators()?);
    let matches_table_class = generated.order() == table.order()
        && crate::weyl::conjugating_element(&generated, &table).is_some();

    let weyl: Vec<WeylElement> = kp.iter().map(|g| g.weyl().clone()).collect();
    let orbs = orbits(sys, &weyl, par.labels())?;
    let rep = separability_report(&par, &k, None)?;
    let rep_prime = separability_report(&par, &kp, None)?;
    let gcr = is_gcr(&par, &k)?;

    let m_radical = m_radical_labels(&par);
    if spec.ty == RootType::E6 && m_radical != [21] {
        return Err(EngineError::Table(format!("E6 radical of P_λ(M) is {m_radical:?}, expected [21]")));
    }
    let certs = rep.certificates.clone();
    let support: Vec<u32> = match spec.v_support {
        Some(s) => s.to_vec(),
        None => certs
            .first()
            .map(|c| c.orbit.clone())
            .ok_or_else(|| EngineError::Solver(format!("{}: no certificate orbit for v(a)", spec.id())))?,
    };
    let nonzero: Vec<F> = F::elements().into_iter().filter(|a| !a.is_zero()).collect();
    let non_mcr = nonzero
        .iter()
        .map(|&a| non_mcr_record(&par, &k, &support, a))
        .collect::<Result<Vec<_>>>()?;
    let pair_variant = if spec.ty == RootType::E6 {
        None
    } else {
        let c = certs
            .iter()
            .find(|c| support.iter().collect::<BTreeSet<_>>() == c.orbit.iter().collect())
            .or(certs.first());
        match c {
            Some(c) => Some(
                nonzero
                    .iter()
                    .map(|&a| non_mcr_record(&par, &k, &[c.pair.0, c.pair.1], a))
                    .collect::<Result<Vec<_>>>()?,
            ),
            None => None,
        }
    };

    let mut transcripts = Vec::new();
    for (i, g) in k.iter().enumerate() {
        transcripts.push(format!("k{}: {}", i + 1, par.format(g)));
    }
    let h = build_h(&par, &k, &support, F::one())?;
    for (i, g) in h.iter().enumerate() {
        transcripts.push(format!("h{} (a=1): {}", i + 1, par.format(g)));
    }
    if spec.ty == RootType::E6 && spec.case == 4 {
        // the ε_21 coordinate of q_2 u q_2⁻¹ for generic u: quadratic in the
        // weight-one coordinates, with no linear a_18 term
        let u = par.symbolic(par.labels())?;
        let img = par.conjugate(&kp[1], &u);
        let c21 = img.at(par.position(21)?);
        let linear: Vec<u32> = c21.vars().into_iter().filter(|&v| v != 21 && c21.coefficient(&[v]) != F::zero()).collect();
        transcripts.push(format!(
            "q2 u q2^-1 at label 21: {} (linear terms besides a21: {linear:?})",
            c21.display_with(&|v| format!("a{v}"))
        ));
    }
    let model = levi_matrix_model(&par, &k)?;
    transcripts.push(format!("natural module: dimension {}, semisimple {}", model.dim(), gcr));
    transcripts.push(format!("centralizer of K: {}", rep.normal_form));

    Ok(CaseReport {
        case: spec.id(),
        field_degree: F::DEGREE,
        order: spec.order,
        generated_order: generated.order(),
        matches_table_class,
        orbits: orbs,
        certificates: certs,
        dims: Dims {
            tangent: rep.tangent_dim,
            group: rep.group_dim,
        },
        weyl_dims: Dims {
            tangent: rep_prime.tangent_dim,
            group: rep_prime.group_dim,
        },
        gcr,
        gcr_justification: GCR_JUSTIFICATION.to_string(),
        m_radical,
        v_support: support,
        non_mcr,
        pair_variant,
        transcripts,
    })
}

/// Position of each table case in the classification of subgroups of S_n.
pub fn table_classes(ty: RootType) -> Result<Vec<(usize, usize)>> {
    let n = ty.levi_degree().ok_or_else(|| EngineError::UnknownType(ty.to_string()))?;
    table_classes_in(ty, &classify_subgroups(n)?)
}

/// [`table_classes`] against an already computed classification.
pub fn table_classes_in(ty: RootType, classes: &[SubgroupClass]) -> Result<Vec<(usize, usize)>> {
    CASES
        .iter()
        .filter(|c| c.ty == ty)
        .map(|c| {
            let pos = match_class(classes, &c.perm_generators()?)
                .ok_or_else(|| EngineError::Table(format!("{} matches no class", c.id())))?;
            Ok((c.case, classes[pos].id))
        })
        .collect()
}

/// The E6 Case 4 tuple `(q_1, q_2 ε_21(a²), t, ε_21(1))` for the finite
/// shadow of the infinitude argument.
pub fn case4_tuple<F: Char2Field>(par: &Parabolic<F>, a: F) -> Result<Vec<GroupElement<F>>> {
    let spec = case_spec(RootType::E6, 4)?;
    let mut h = build_h(par, &spec.k(par)?, &spec.v_support.expect("Case 4 support").to_vec(), a)?;
    h.push(par.from_unipotent(par.epsilon(21, F::one())?));
    Ok(h)
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct ShadowReport {
    pub a: String,
    pub b: String,
    /// When K is L-irreducible, Schur puts C_L(K) in the centre of the Levi
    /// and the torus enumeration below is complete. Otherwise the verdicts
    /// only cover the torus part of C_L(K).
    pub k_irreducible: bool,
    pub levi_centralizer_order: usize,
    /// Decided by the conjugation system.
    pub nonconjugate: bool,
    /// Decided by trying every `ε_21(y)` over the field.
    pub nonconjugate_brute_force: bool,
}

/// Whether the Case-4 tuples for `a` and `b` are not conjugate under
/// P_λ(M)(GF(q)). Levi parts of a conjugating element must centralize K;
/// the torus elements doing so are enumerated and composed with
/// `R_u(P_λ(M)) = U_21`.
pub fn tuple_shadow_check<F: Char2Field>(a: F, b: F) -> Result<ShadowReport> {
    let spec = case_spec(RootType::E6, 4)?;
    let par: Parabolic<F> = Parabolic::new(spec.system()?)?;
    let k = spec.k(&par)?;
    let k_irreducible = levi_matrix_model(&par, &k)?.is_irreducible()?;
    let ta = case4_tuple(&par, a)?;
    let tb = case4_tuple(&par, b)?;
    let rank = par.system().rank();
    let nonzero: Vec<F> = F::elements().into_iter().filter(|x| !x.is_zero()).collect();
    let mut cent = Vec::new();
    let mut coords = vec![0usize; rank];
    loop {
        let c: Vec<F> = coords.iter().map(|&i| nonzero[i]).collect();
        let z = par.from_torus(TorusElement::new(&c)?)?;
        let zinv = par.inv(&z);
        if k.iter().all(|g| par.mul(&par.mul(&z, g), &zinv) == *g) {
            cent.push(z);
        }
        let mut i = 0;
        while i < rank {
            coords[i] += 1;
            if coords[i] < nonzero.len() {
                break;
            }
            coords[i] = 0;
            i += 1;
        }
        if i == rank {
            break;
        }
    }
    let mut conj_solver = false;
    let mut conj_brute = false;
    for z in &cent {
        // symbolic m = ε_21(x_21)
        let m = par.from_unipotent(par.symbolic(&[21])?);
        let g = par.mul(&par.lift::<MPoly<F>>(z), &m);
        let ginv = par.inv(&g);
        let mut eqs = Vec::new();
        for (x, y) in ta.iter().zip(&tb) {
            let img = par.mul(&par.mul(&g, &par.lift(x)), &ginv);
            let target = par.lift::<MPoly<F>>(y);
            if img.weyl() != target.weyl() || img.torus() != target.torus() {
                eqs.push(MPoly::constant(F::one()));
                continue;
            }
            for p in 0..par.dim() {
                eqs.push(img.unipotent().at(p).clone() + target.unipotent().at(p).clone());
            }
        }
        let sys = PolySystem::new(vec![21], eqs)?;
        conj_solver |= solve(&sys, &|v| (0, v))?.consistent;
        for &y in F::elements().iter() {
            let g = par.mul(z, &par.from_unipotent(par.epsilon(21, y)?));
            let ginv = par.inv(&g);
            if ta.iter().zip(&tb).all(|(x, t)| par.mul(&par.mul(&g, x), &ginv) == *t) {
                conj_brute = true;
            }
        }
    }
    Ok(ShadowReport {
        a: a.to_hex(),
        b: b.to_hex(),
        k_irreducible,
        levi_centralizer_order: cent.len(),
        nonconjugate: !conj_solver,
        nonconjugate_brute_force: !conj_brute,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::crcheck::MatrixModule;
    use crate::field::Matrix;
    use crate::Gf4;
    use num_traits::{One, Zero};

    fn case4() -> (&'static CaseSpec, Parabolic<Gf4>) {
        let spec = case_spec(RootType::E6, 4).unwrap();
        (spec, Parabolic::new(spec.system().unwrap()).unwrap())
    }

    #[test]
    fn e6_cocharacter() {
        let (_, par) = case4();
        // internal order a b g d e σ
        assert_eq!(standard_levi_cocharacter(par.system()).unwrap().0, vec![1, 2, 3, 2, 1, 2]);
        assert_eq!(m_radical_labels(&par), vec![21]);
    }

    #[test]
    fn case4_matrix_model() {
        let (spec, par) = case4();
        let k = spec.k(&par).unwrap();
        let m = levi_matrix_model(&par, &k).unwrap();
        let b = Gf4::element_of_order(3).unwrap();
        let mut t = Matrix::zeros(6, 6);
        for (i, x) in [b, b * b, Gf4::one(), Gf4::one(), b, b * b].into_iter().enumerate() {
            t[(i, i)] = x;
        }
        assert_eq!(m.generators()[2], t);
        let q1 = MatrixModule::<Gf4>::permutation(6, &[parse_cycles(6, "(1 4 2)(3 6 5)").unwrap()]).unwrap();
        assert_eq!(m.generators()[0], q1.generators()[0]);
    }

    #[test]
    fn build_h_puts_the_correction_on_q2() {
        let (spec, par) = case4();
        let k = spec.k(&par).unwrap();
        for a in Gf4::nonzero_elements() {
            let h = build_h(&par, &k, &[7, 8], a).unwrap();
            assert_eq!(h[0], k[0]);
            assert_eq!(h[1], par.mul(&k[1], &par.from_unipotent(par.epsilon(21, a * a).unwrap())));
            assert_eq!(h[2], k[2]);
            // v(√c) gives the tail ε_21(c)
            let c = a * a;
            let h2 = build_h(&par, &k, &[7, 8], c.sqrt()).unwrap();
            assert_eq!(h2, h);
        }
    }

    #[test]
    fn c_lambda_of_h_is_k() {
        for spec in CASES.iter().filter(|c| c.ty == RootType::E6) {
            let par: Parabolic<Gf4> = Parabolic::new(spec.system().unwrap()).unwrap();
            let lambda = standard_levi_cocharacter(par.system()).unwrap();
            let k = spec.k(&par).unwrap();
            let h = build_h(&par, &k, spec.v_support.unwrap(), Gf4::generator()).unwrap();
            let images: Vec<_> = h.iter().map(|g| par.c_lambda(g, &lambda)).collect();
            assert_eq!(images, k, "{}", spec.id());
        }
    }

    #[test]
    fn k_itself_is_conjugate_to_its_projection() {
        let (spec, par) = case4();
        let k = spec.k(&par).unwrap();
        assert!(!non_mcr_check(&par, &k).unwrap());
        let h = build_h(&par, &k, &[7, 8], Gf4::zero()).unwrap();
        assert_eq!(h, k);
    }

    #[test]
    fn case4_report() {
        let spec = case_spec(RootType::E6, 4).unwrap();
        let r = verify_case::<Gf4>(spec).unwrap();
        assert!(r.matches_table_class);
        assert_eq!(r.generated_order, 6);
        assert_eq!(
            r.orbits,
            vec![
                vec![1, 2, 3, 4, 5, 6],
                vec![7, 8],
                vec![9, 10, 11, 12, 13, 14],
                vec![15, 16, 17, 18, 19, 20],
                vec![21]
            ]
        );
        assert_eq!(r.weyl_dims, Dims { tangent: 5, group: 4 });
        assert_eq!(r.dims.tangent, r.dims.group + 1);
        assert!(r.certificates.iter().any(|c| c.orbit == [7, 8] && c.correction == 21));
        assert_eq!(r.m_radical, vec![21]);
        assert_eq!(r.non_mcr.len(), 3);
        assert!(r.non_mcr.iter().all(NonMcrRecord::not_mcr));
        assert!(r.pair_variant.is_none());
        assert!(r.transcripts.iter().any(|t| t.contains("linear terms besides a21: []")));
        let json = serde_json::to_string(&r).unwrap();
        assert_eq!(serde_json::from_str::<CaseReport>(&json).unwrap(), r);
    }

    /// (α∨+ε∨)(b) = diag(b, b², 1, 1, b, b²) is constant on the blocks
    /// {1,5}, {2,6}, {3,4}, and K′ permutes those blocks in rows 1, 3, 4, 5
    /// and 7. Each block stabilizer swaps the two points of its block, so
    /// the block sums span a submodule without complement.
    #[test]
    fn alpha_epsilon_torus_leaves_a_block_system() {
        let blocks = [[0usize, 4], [1, 5], [2, 3]];
        for spec in CASES.iter().filter(|c| c.ty == RootType::E6) {
            let preserved = spec.perm_generators().unwrap().iter().all(|p| {
                blocks.iter().all(|b| {
                    let img = [p.apply(b[0]), p.apply(b[1])];
                    blocks.iter().any(|c| c.contains(&img[0]) && c.contains(&img[1]))
                })
            });
            let par: Parabolic<Gf4> = Parabolic::new(spec.system().unwrap()).unwrap();
            let gcr = is_gcr(&par, &spec.k(&par).unwrap()).unwrap();
            let alpha_eps = spec.t == AE;
            assert_eq!(!gcr, alpha_eps && preserved, "{}", spec.id());
        }
    }

    #[test]
    fn alpha_minus_epsilon_torus_is_gcr() {
        for case in [1, 3, 4, 5, 7] {
            let mut spec = case_spec(RootType::E6, case).unwrap().clone();
            spec.t = &[("a", 1), ("e", -1)];
            let par: Parabolic<Gf4> = Parabolic::new(spec.system().unwrap()).unwrap();
            let k = spec.k(&par).unwrap();
            assert!(is_gcr(&par, &k).unwrap(), "{}", spec.id());
            let rep = crate::centralizer::separability_report(&par, &k, None).unwrap();
            assert_eq!(rep.tangent_dim, rep.group_dim + 1);
        }
    }

    #[test]
    fn e6_rows_match_their_classes() {
        let ids: Vec<usize> = table_classes(RootType::E6).unwrap().into_iter().map(|(_, id)| id).collect();
        let mut sorted = ids.clone();
        sorted.sort();
        assert_eq!(sorted, vec![4, 8, 13, 16, 20, 22, 33, 36, 45, 46, 52]);
    }

    #[test]
    fn shadow_tuples() {
        let b = Gf4::generator();
        let r = tuple_shadow_check(Gf4::one(), b).unwrap();
        assert!(r.nonconjugate && r.nonconjugate_brute_force);
        let same = tuple_shadow_check(b, b).unwrap();
        assert!(!same.nonconjugate && !same.nonconjugate_brute_force);
        assert!(!r.k_irreducible);
    }
}
