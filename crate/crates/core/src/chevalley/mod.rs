//! Arithmetic in the parabolic P = (W_L ⋉ T) ⋉ R_u(P) at characteristic 2.
//!
//! Root-group elements of the unipotent radical are kept in a normal form
//! ordered by ascending label. All structure constants are ±1 and vanish
//! to 1 mod 2, so ε_i(a)ε_j(b) = ε_j(b)ε_i(a)ε_{i+j}(ab) whenever i+j is a
//! root, and the Weyl representatives n_w act by ε_ζ(a) ↦ ε_{wζ}(a).

pub mod poly;
mod torus;

pub use poly::{Coefficient, MPoly, Monomial};
pub use torus::{weyl_fixing_torus, TorusElement};

use std::collections::VecDeque;
use std::marker::PhantomData;

use num_traits::Zero;

use crate::error::{EngineError, Result};
use crate::field::Char2Field;
use crate::rootdata::{cochar_weight, Cocharacter, LabeledRootSystem, Root};
use crate::weyl::WeylElement;

/// Coordinates `a_i` of `Π ε_i(a_i)` in normal-form order.
#[derive(Clone, PartialEq, Debug)]
pub struct UnipotentElement<R> {
    coeffs: Vec<R>,
}

impl<R: Clone + Zero> UnipotentElement<R> {
    /// Coefficient at a normal-form position.
    pub fn at(&self, pos: usize) -> &R {
        &self.coeffs[pos]
    }

    pub fn coeffs(&self) -> &[R] {
        &self.coeffs
    }

    pub fn is_identity(&self) -> bool {
        self.coeffs.iter().all(Zero::is_zero)
    }

    pub fn map<S>(&self, f: impl Fn(&R) -> S) -> UnipotentElement<S> {
        UnipotentElement {
            coeffs: self.coeffs.iter().map(f).collect(),
        }
    }
}

/// A vector of the Lie algebra of R_u(P) in the basis e_ζ.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct LieVector<F> {
    pub coeffs: Vec<F>,
}

/// `w · t · u` with `w ∈ W_L`.
#[derive(Clone, PartialEq, Debug)]
pub struct GroupElement<F, R = F> {
    w: WeylElement,
    t: TorusElement<F>,
    u: UnipotentElement<R>,
}

impl<F: Char2Field, R: Coefficient<F>> GroupElement<F, R> {
    pub fn weyl(&self) -> &WeylElement {
        &self.w
    }

    pub fn torus(&self) -> &TorusElement<F> {
        &self.t
    }

    pub fn unipotent(&self) -> &UnipotentElement<R> {
        &self.u
    }

    pub fn is_levi(&self) -> bool {
        self.u.is_identity()
    }
}

/// The parabolic attached to a labeled root system with a σ-node: the
/// unipotent radical is spanned by the roots of positive σ-weight.
#[derive(Clone, Debug)]
pub struct Parabolic<F> {
    sys: LabeledRootSystem,
    labels: Vec<u32>,
    roots: Vec<usize>,
    pos_of_root: Vec<Option<usize>>,
    sums: Vec<Option<usize>>,
    _field: PhantomData<F>,
}

impl<F: Char2Field> Parabolic<F> {
    pub fn new(sys: LabeledRootSystem) -> Result<Self> {
        if sys.sigma().is_none() {
            return Err(EngineError::UnknownType(format!("{} has no σ-node", sys.root_type())));
        }
        let labels = sys.unipotent_labels();
        let roots: Vec<usize> = labels.iter().map(|&l| sys.root_of_label(l).expect("label")).collect();
        let mut pos_of_root = vec![None; sys.num_roots()];
        for (p, &r) in roots.iter().enumerate() {
            pos_of_root[r] = Some(p);
        }
        let n = roots.len();
        let mut sums = vec![None; n * n];
        for i in 0..n {
            for j in 0..n {
                sums[i * n + j] = sys.sum(roots[i], roots[j]).and_then(|k| pos_of_root[k]);
            }
        }
        Ok(Parabolic {
            sys,
            labels,
            roots,
            pos_of_root,
            sums,
            _field: PhantomData,
        })
    }

    pub fn system(&self) -> &LabeledRootSystem {
        &self.sys
    }

    /// Number of roots in Ψ(R_u(P)).
    pub fn dim(&self) -> usize {
        self.labels.len()
    }

    /// Ψ(R_u(P)) labels in normal-form order.
    pub fn labels(&self) -> &[u32] {
        &self.labels
    }

    pub fn label(&self, pos: usize) -> u32 {
        self.labels[pos]
    }

    pub fn position(&self, label: u32) -> Result<usize> {
        self.sys
            .root_of_label(label)
            .and_then(|r| self.pos_of_root[r])
            .ok_or(EngineError::UnknownLabel(label))
    }

    pub fn root(&self, pos: usize) -> &Root {
        self.sys.root(self.roots[pos])
    }

    pub fn weight(&self, pos: usize) -> i32 {
        self.sys.sigma_weight(self.roots[pos])
    }

    /// Position of root_i + root_j if it is a root (necessarily in R_u(P)).
    pub fn sum(&self, i: usize, j: usize) -> Option<usize> {
        self.sums[i * self.dim() + j]
    }

    // ---- unipotent radical ------------------------------------------------

    pub fn one<R: Coefficient<F>>(&self) -> UnipotentElement<R> {
        UnipotentElement {
            coeffs: vec![R::zero(); self.dim()],
        }
    }

    /// Normal form of `Π ε_{l}(c)` taken in the given order.
    pub fn collect<R: Coefficient<F>>(&self, factors: &[(u32, R)]) -> Result<UnipotentElement<R>> {
        let pos = factors
            .iter()
            .map(|(l, c)| Ok((self.position(*l)?, c.clone())))
            .collect::<Result<Vec<_>>>()?;
        let mut u = self.one();
        self.push_factors(&mut u.coeffs, pos);
        Ok(u)
    }

    pub fn epsilon<R: Coefficient<F>>(&self, label: u32, c: R) -> Result<UnipotentElement<R>> {
        self.collect(&[(label, c)])
    }

    /// Right-multiplies the normal form `nf` by the factors in order.
    fn push_factors<R: Coefficient<F>>(&self, nf: &mut [R], factors: Vec<(usize, R)>) {
        let n = self.dim();
        let mut pending: VecDeque<(usize, R)> = factors.into();
        while let Some((j, b)) = pending.pop_front() {
            if b.is_zero() {
                continue;
            }
            // Move ε_j(b) left past every factor at a later position; each
            // such ε_i(a) picks up the correction ε_{i+j}(ab).
            let mut front = Vec::new();
            for i in j + 1..n {
                if nf[i].is_zero() {
                    continue;
                }
                let a = std::mem::replace(&mut nf[i], R::zero());
                let corr = self.sum(i, j).map(|k| (k, a.clone() * b.clone()));
                front.push((i, a));
                front.extend(corr);
            }
            nf[j] = std::mem::replace(&mut nf[j], R::zero()) + b;
            for f in front.into_iter().rev() {
                pending.push_front(f);
            }
        }
    }

    fn factors<R: Coefficient<F>>(u: &UnipotentElement<R>) -> Vec<(usize, R)> {
        u.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (p, c.clone()))
            .collect()
    }

    pub fn mul_u<R: Coefficient<F>>(&self, u: &UnipotentElement<R>, v: &UnipotentElement<R>) -> UnipotentElement<R> {
        let mut out = u.clone();
        self.push_factors(&mut out.coeffs, Self::factors(v));
        out
    }

    /// ε(a)⁻¹ = ε(−a) = ε(a), so the inverse is the reversed product.
    pub fn inv_u<R: Coefficient<F>>(&self, u: &UnipotentElement<R>) -> UnipotentElement<R> {
        let mut f = Self::factors(u);
        f.reverse();
        let mut out = self.one();
        self.push_factors(&mut out.coeffs, f);
        out
    }

    /// `(w t) u (w t)⁻¹`; fails if `w` moves a root of R_u(P) outside it.
    pub fn conj_weyl_torus<R: Coefficient<F>>(
        &self,
        w: &WeylElement,
        t: &TorusElement<F>,
        u: &UnipotentElement<R>,
    ) -> Result<UnipotentElement<R>> {
        let mut f = Vec::new();
        for (p, c) in Self::factors(u) {
            let q = self.pos_of_root[w.apply(self.roots[p])].ok_or(EngineError::DomainNotStable)?;
            f.push((q, c.scale(t.eval(&self.sys, self.root(p)))));
        }
        let mut out = self.one();
        self.push_factors(&mut out.coeffs, f);
        Ok(out)
    }

    // ---- group elements ---------------------------------------------------

    fn check_levi(&self, w: &WeylElement) -> Result<()> {
        for &r in &self.roots {
            if self.pos_of_root[w.apply(r)].is_none() {
                return Err(EngineError::DomainNotStable);
            }
        }
        Ok(())
    }

    pub fn element<R: Coefficient<F>>(
        &self,
        w: WeylElement,
        t: TorusElement<F>,
        u: UnipotentElement<R>,
    ) -> Result<GroupElement<F, R>> {
        self.check_levi(&w)?;
        if t.rank() != self.sys.rank() || u.coeffs.len() != self.dim() {
            return Err(EngineError::DegreeOutOfRange(t.rank()));
        }
        Ok(GroupElement { w, t, u })
    }

    pub fn identity<R: Coefficient<F>>(&self) -> GroupElement<F, R> {
        GroupElement {
            w: WeylElement::identity(&self.sys),
            t: TorusElement::identity(self.sys.rank()),
            u: self.one(),
        }
    }

    pub fn from_weyl<R: Coefficient<F>>(&self, w: WeylElement) -> Result<GroupElement<F, R>> {
        self.element(w, TorusElement::identity(self.sys.rank()), self.one())
    }

    pub fn from_torus<R: Coefficient<F>>(&self, t: TorusElement<F>) -> Result<GroupElement<F, R>> {
        self.element(WeylElement::identity(&self.sys), t, self.one())
    }

    pub fn from_unipotent<R: Coefficient<F>>(&self, u: UnipotentElement<R>) -> GroupElement<F, R> {
        GroupElement {
            u,
            ..self.identity()
        }
    }

    /// `g · u` for a unipotent factor on the right.
    pub fn times_u<R: Coefficient<F>>(&self, g: &GroupElement<F, R>, u: &UnipotentElement<R>) -> GroupElement<F, R> {
        GroupElement {
            w: g.w.clone(),
            t: g.t,
            u: self.mul_u(&g.u, u),
        }
    }

    pub fn lift<R: Coefficient<F>>(&self, g: &GroupElement<F, F>) -> GroupElement<F, R> {
        GroupElement {
            w: g.w.clone(),
            t: g.t,
            u: g.u.map(|c| R::from_field(*c)),
        }
    }

    /// `(w1 t1 u1)(w2 t2 u2) = w1w2 · (w2⁻¹t1w2)t2 · ((w2t2)⁻¹u1(w2t2)) u2`.
    pub fn mul<R: Coefficient<F>>(&self, g: &GroupElement<F, R>, h: &GroupElement<F, R>) -> GroupElement<F, R> {
        let w2inv = h.w.inverse();
        let t = g.t.conjugate_by(&self.sys, &w2inv).mul(&h.t);
        // (w2 t2)⁻¹ = w2⁻¹ · (w2 t2⁻¹ w2⁻¹)
        let tw = h.t.inverse().conjugate_by(&self.sys, &h.w);
        let u1 = self
            .conj_weyl_torus(&w2inv, &tw, &g.u)
            .expect("Weyl parts lie in W_L");
        GroupElement {
            w: g.w.compose(&h.w),
            t,
            u: self.mul_u(&u1, &h.u),
        }
    }

    /// `(w t u)⁻¹ = w⁻¹ · (w t⁻¹ w⁻¹) · ((wt) u⁻¹ (wt)⁻¹)`.
    pub fn inv<R: Coefficient<F>>(&self, g: &GroupElement<F, R>) -> GroupElement<F, R> {
        let u = self
            .conj_weyl_torus(&g.w, &g.t, &self.inv_u(&g.u))
            .expect("Weyl parts lie in W_L");
        GroupElement {
            w: g.w.inverse(),
            t: g.t.inverse().conjugate_by(&self.sys, &g.w),
            u,
        }
    }

    pub fn pow<R: Coefficient<F>>(&self, g: &GroupElement<F, R>, k: u32) -> GroupElement<F, R> {
        (0..k).fold(self.identity(), |acc, _| self.mul(&acc, g))
    }

    /// `g u g⁻¹` for `g` over the field and `u` over any coefficient ring.
    pub fn conjugate<R: Coefficient<F>>(&self, g: &GroupElement<F, F>, u: &UnipotentElement<R>) -> UnipotentElement<R> {
        let ug: UnipotentElement<R> = g.u.map(|c| R::from_field(*c));
        let inner = self.mul_u(&self.mul_u(&ug, u), &self.inv_u(&ug));
        self.conj_weyl_torus(&g.w, &g.t, &inner)
            .expect("Weyl parts lie in W_L")
    }

    /// `g h g⁻¹` for group elements.
    pub fn conjugate_element<R: Coefficient<F>>(
        &self,
        g: &GroupElement<F, R>,
        h: &GroupElement<F, R>,
    ) -> GroupElement<F, R> {
        self.mul(&self.mul(g, h), &self.inv(g))
    }

    /// Adjoint action of `w t` on Lie(R_u(P)): e_ζ ↦ ζ(t) e_{wζ}.
    pub fn ad_action(&self, g: &GroupElement<F, F>, x: &LieVector<F>) -> Result<LieVector<F>> {
        if !g.u.is_identity() {
            return Err(EngineError::UnipotentPart);
        }
        let mut out = vec![F::zero(); self.dim()];
        for (p, c) in x.coeffs.iter().enumerate() {
            if c.is_zero() {
                continue;
            }
            let q = self.pos_of_root[g.w.apply(self.roots[p])].ok_or(EngineError::DomainNotStable)?;
            out[q] = out[q] + *c * g.t.eval(&self.sys, self.root(p));
        }
        Ok(LieVector { coeffs: out })
    }

    /// The matrix of `ad(g)` (column p is the image of e_p).
    pub fn ad_matrix(&self, g: &GroupElement<F, F>) -> Result<crate::field::Matrix<F>> {
        let n = self.dim();
        let mut m = crate::field::Matrix::zeros(n, n);
        for p in 0..n {
            let mut e = vec![F::zero(); n];
            e[p] = F::one();
            let img = self.ad_action(g, &LieVector { coeffs: e })?;
            for q in 0..n {
                m[(q, p)] = img.coeffs[q];
            }
        }
        Ok(m)
    }

    pub fn basis_vector(&self, labels: &[u32]) -> Result<LieVector<F>> {
        let mut coeffs = vec![F::zero(); self.dim()];
        for &l in labels {
            let p = self.position(l)?;
            coeffs[p] = coeffs[p] + F::one();
        }
        Ok(LieVector { coeffs })
    }

    /// `c_λ(g) = lim_{a→0} λ(a) g λ(a)⁻¹`: drops the coordinates of
    /// positive λ-weight.
    pub fn c_lambda<R: Coefficient<F>>(&self, g: &GroupElement<F, R>, lambda: &Cocharacter) -> GroupElement<F, R> {
        let mut u = g.u.clone();
        for p in 0..self.dim() {
            if cochar_weight(&self.sys, self.root(p), lambda) > 0 {
                u.coeffs[p] = R::zero();
            }
        }
        GroupElement {
            w: g.w.clone(),
            t: g.t,
            u,
        }
    }

    /// Unipotent element with coordinate `x_l` at every listed label (the
    /// variable index is the label itself).
    pub fn symbolic(&self, labels: &[u32]) -> Result<UnipotentElement<MPoly<F>>> {
        let mut u = self.one();
        for &l in labels {
            u.coeffs[self.position(l)?] = MPoly::var(l);
        }
        Ok(u)
    }

    /// Nonzero coordinates as `(label, coefficient)`.
    pub fn terms<'a, R: Coefficient<F>>(&self, u: &'a UnipotentElement<R>) -> Vec<(u32, &'a R)> {
        u.coeffs
            .iter()
            .enumerate()
            .filter(|(_, c)| !c.is_zero())
            .map(|(p, c)| (self.labels[p], c))
            .collect()
    }

    // ---- text format ------------------------------------------------------

    /// `w=[word] t=(c_1,...,c_r) u=[(label,coeff),...]` with hexadecimal
    /// field elements and the Weyl part as a reduced word in short letters.
    pub fn format(&self, g: &GroupElement<F, F>) -> String {
        let word = g.w.word_letters(&self.sys).join(" ");
        let t: Vec<String> = g.t.coords().iter().map(|c| c.to_hex()).collect();
        let u: Vec<String> = self
            .terms(&g.u)
            .into_iter()
            .map(|(l, c)| format!("({l},{})", c.to_hex()))
            .collect();
        format!("w=[{word}] t=({}) u=[{}]", t.join(","), u.join(","))
    }

    pub fn parse(&self, s: &str) -> Result<GroupElement<F, F>> {
        let bad = || EngineError::Parse(format!("bad group element `{s}`"));
        let s = s.trim();
        let rest = s.strip_prefix("w=[").ok_or_else(bad)?;
        let (word, rest) = rest.split_once(']').ok_or_else(bad)?;
        let rest = rest.trim_start().strip_prefix("t=(").ok_or_else(bad)?;
        let (tpart, rest) = rest.split_once(')').ok_or_else(bad)?;
        let rest = rest.trim_start().strip_prefix("u=[").ok_or_else(bad)?;
        let upart = rest.strip_suffix(']').ok_or_else(bad)?;

        let w = WeylElement::parse_word(&self.sys, word)?;
        let coords = tpart
            .split(',')
            .map(|c| F::from_hex(c.trim()))
            .collect::<Result<Vec<_>>>()?;
        let t = TorusElement::new(&coords)?;
        let mut factors = Vec::new();
        let mut body = upart.trim();
        while !body.is_empty() {
            let inner = body.strip_prefix('(').ok_or_else(bad)?;
            let (pair, tail) = inner.split_once(')').ok_or_else(bad)?;
            let (l, c) = pair.split_once(',').ok_or_else(bad)?;
            let l: u32 = l.trim().parse().map_err(|_| bad())?;
            factors.push((l, F::from_hex(c.trim())?));
            body = tail.trim_start().trim_start_matches(',').trim_start();
        }
        let u = self.collect(&factors)?;
        self.element(w, t, u)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::rootdata::{build_root_system, standard_levi_cocharacter, RootType};
    use crate::{Gf16, Gf4};
    use num_traits::One;
    use rand::{Rng, SeedableRng};
    use rand_chacha::ChaCha8Rng;

    const Q1: &str = "a b g b a b g b g d e d g e";
    const Q2: &str = "a b g d g b a b d e d";

    fn e6() -> Parabolic<Gf4> {
        Parabolic::new(build_root_system(RootType::E6).unwrap()).unwrap()
    }

    fn q(par: &Parabolic<Gf4>, word: &str) -> GroupElement<Gf4> {
        par.from_weyl(WeylElement::parse_word(par.system(), word).unwrap()).unwrap()
    }

    fn random_element<F: Char2Field>(par: &Parabolic<F>, rng: &mut ChaCha8Rng) -> GroupElement<F> {
        let levi = par.system().levi_simples();
        let word: Vec<usize> = (0..rng.gen_range(0..12)).map(|_| levi[rng.gen_range(0..levi.len())]).collect();
        let w = WeylElement::from_indices(par.system(), &word);
        let nz = F::nonzero_elements();
        let coords: Vec<F> = (0..par.system().rank()).map(|_| nz[rng.gen_range(0..nz.len())]).collect();
        let t = TorusElement::new(&coords).unwrap();
        let all = F::elements();
        let factors: Vec<(u32, F)> = (0..rng.gen_range(0..8))
            .map(|_| {
                let l = par.labels()[rng.gen_range(0..par.dim())];
                (l, all[rng.gen_range(0..all.len())])
            })
            .collect();
        let u = par.collect(&factors).unwrap();
        par.element(w, t, u).unwrap()
    }

    #[test]
    fn swapping_a_non_commuting_pair_adds_the_central_correction() {
        let par = e6();
        let a = Gf4::generator();
        let u = par.collect(&[(8, a), (7, a)]).unwrap();
        let expect = par.collect(&[(7, a), (8, a), (21, a * a)]).unwrap();
        assert_eq!(u, expect);
        assert_eq!(par.terms(&u).len(), 3);
        // roots 1 and 2 do not sum to a root
        let v = par.collect(&[(2, a), (1, a)]).unwrap();
        assert_eq!(par.terms(&v).len(), 2);
        // label 21 is central
        let w = par.collect(&[(21, a), (7, a)]).unwrap();
        assert_eq!(w, par.collect(&[(7, a), (21, a)]).unwrap());
        assert!(par.collect(&[(22, a)]).is_err());
    }

    #[test]
    fn q2_moves_orbit_constant_elements_into_the_centre() {
        let par = Parabolic::<Gf16>::new(build_root_system(RootType::E6).unwrap()).unwrap();
        let q2: GroupElement<Gf16> = par.from_weyl(WeylElement::parse_word(par.system(), Q2).unwrap()).unwrap();
        let sym = |l: u32| -> MPoly<Gf16> {
            match l {
                1..=6 => MPoly::var(1),
                7 | 8 => MPoly::var(7),
                9..=14 => MPoly::var(9),
                15..=20 => MPoly::var(15),
                _ => MPoly::var(21),
            }
        };
        let factors: Vec<(u32, MPoly<Gf16>)> = (1..=21).map(|l| (l, sym(l))).collect();
        let u = par.collect(&factors).unwrap();
        let image = par.conjugate(&q2, &u);
        let sq = |v: u32| MPoly::var(v) * MPoly::var(v);
        let expect = sq(1) + sq(7) + sq(9) + sq(15) + MPoly::var(21);
        assert_eq!(image.at(par.position(21).unwrap()), &expect);
    }

    #[test]
    fn conjugating_q2_by_the_curve() {
        let par = e6();
        let q2 = q(&par, Q2);
        for a in Gf4::nonzero_elements() {
            let v = par.collect(&[(7, a), (8, a)]).unwrap();
            let vg = par.from_unipotent(v);
            let h = par.conjugate_element(&vg, &q2);
            let expect = par.times_u(&q2, &par.epsilon(21, a * a).unwrap());
            assert_eq!(h, expect);
        }
    }

    #[test]
    fn weyl_representatives_are_involutions() {
        let par = e6();
        for l in ["a", "b", "g", "d", "e"] {
            let n = q(&par, l);
            assert_eq!(par.mul(&n, &n), par.identity());
        }
    }

    #[test]
    fn case4_torus_fixes_the_witness() {
        let par = e6();
        let b = Gf4::generator();
        let sys = par.system();
        let mut coords = vec![Gf4::one(); 6];
        coords[0] = b;
        coords[4] = b;
        let t: GroupElement<Gf4> = par.from_torus(TorusElement::new(&coords).unwrap()).unwrap();
        let x = MPoly::<Gf4>::var(0);
        let u = par.collect(&[(7, x.clone()), (8, x)]).unwrap();
        assert_eq!(par.conjugate(&t, &u), u);
        let e = par.basis_vector(&[7, 8]).unwrap();
        for g in [q(&par, Q1), q(&par, Q2), t] {
            assert_eq!(par.ad_action(&g, &e).unwrap(), e);
        }
        let e9 = par.basis_vector(&[9]).unwrap();
        assert_eq!(par.ad_action(&q(&par, Q2), &e9).unwrap(), par.basis_vector(&[14]).unwrap());
        assert_eq!(sys.rank(), 6);
    }

    #[test]
    fn ad_action_rejects_unipotent_parts() {
        let par = e6();
        let g = par.from_unipotent(par.epsilon(3, Gf4::one()).unwrap());
        let e = par.basis_vector(&[1]).unwrap();
        assert_eq!(par.ad_action(&g, &e), Err(EngineError::UnipotentPart));
    }

    #[test]
    fn c_lambda_strips_the_radical() {
        let par = e6();
        let lambda = standard_levi_cocharacter(par.system()).unwrap();
        let q2 = q(&par, Q2);
        let h = par.times_u(&q2, &par.epsilon(21, Gf4::one()).unwrap());
        assert_eq!(par.c_lambda(&h, &lambda), q2);
        let z = par.from_unipotent(par.epsilon(21, Gf4::generator()).unwrap());
        assert_eq!(par.c_lambda(&z, &lambda), par.identity());
        assert_eq!(par.c_lambda(&q2, &lambda), q2);
    }

    #[test]
    fn text_round_trip() {
        let par = e6();
        let mut rng = ChaCha8Rng::seed_from_u64(11);
        for _ in 0..50 {
            let g = random_element(&par, &mut rng);
            let s = par.format(&g);
            assert_eq!(par.parse(&s).unwrap(), g, "{s}");
        }
        assert_eq!(par.format(&par.identity()), "w=[] t=(1,1,1,1,1,1) u=[]");
        assert!(par.parse("w=[s] t=(1,1,1,1,1,1) u=[]").is_err());
    }

    #[test]
    fn group_laws() {
        let par = e6();
        let mut rng = ChaCha8Rng::seed_from_u64(5);
        let lambda = standard_levi_cocharacter(par.system()).unwrap();
        for _ in 0..100 {
            let g = random_element(&par, &mut rng);
            let h = random_element(&par, &mut rng);
            let k = random_element(&par, &mut rng);
            assert_eq!(par.mul(&par.mul(&g, &h), &k), par.mul(&g, &par.mul(&h, &k)));
            assert_eq!(par.mul(&g, &par.inv(&g)), par.identity());
            assert_eq!(
                par.c_lambda(&par.mul(&g, &h), &lambda),
                par.mul(&par.c_lambda(&g, &lambda), &par.c_lambda(&h, &lambda))
            );
            let (u, v) = (k.unipotent(), h.unipotent());
            assert_eq!(
                par.conjugate(&g, &par.mul_u(u, v)),
                par.mul_u(&par.conjugate(&g, u), &par.conjugate(&g, v))
            );
            // conjugation agrees with the group product
            let via_group = par.conjugate_element(&g, &par.from_unipotent(u.clone()));
            assert_eq!(via_group, par.from_unipotent(par.conjugate(&g, u)));
        }
    }

    #[test]
    fn linear_part_of_conjugation_is_the_adjoint_action() {
        let par = e6();
        let mut rng = ChaCha8Rng::seed_from_u64(9);
        for _ in 0..20 {
            let g = random_element(&par, &mut rng);
            let g = par.element(g.weyl().clone(), *g.torus(), par.one()).unwrap();
            for &l in par.labels() {
                let u = par.epsilon(l, MPoly::var(0)).unwrap();
                let img = par.conjugate(&g, &u);
                let lin: Vec<Gf4> = img.coeffs().iter().map(|c| c.coefficient(&[0])).collect();
                let e = par.basis_vector(&[l]).unwrap();
                assert_eq!(lin, par.ad_action(&g, &e).unwrap().coeffs);
            }
        }
    }

    #[test]
    fn conjugation_never_lowers_sigma_weight() {
        let par = e6();
        let mut rng = ChaCha8Rng::seed_from_u64(3);
        let x = MPoly::<Gf4>::var(0);
        for _ in 0..20 {
            let g = random_element(&par, &mut rng);
            for p in 0..par.dim() {
                let u = par.epsilon(par.label(p), x.clone()).unwrap();
                let img = par.conjugate(&g, &u);
                for (q, c) in img.coeffs().iter().enumerate() {
                    if !c.is_zero() {
                        assert!(par.weight(q) >= par.weight(p));
                    }
                }
            }
        }
    }
}
