use std::collections::{BTreeMap, BTreeSet};
use std::fmt;
use std::ops::{Add, Mul};

use num_traits::{One, Zero};

use crate::field::Char2Field;

/// A coefficient ring for root-group coordinates: the field itself or
/// polynomials over it.
pub trait Coefficient<F: Char2Field>:
    Clone + PartialEq + fmt::Debug + Zero + Add<Output = Self> + Mul<Output = Self> + Send + Sync
{
    fn from_field(c: F) -> Self;
    fn scale(&self, c: F) -> Self;
}

impl<F: Char2Field> Coefficient<F> for F {
    fn from_field(c: F) -> Self {
        c
    }

    fn scale(&self, c: F) -> Self {
        *self * c
    }
}

/// A monomial as the sorted multiset of its variable indices.
pub type Monomial = Vec<u32>;

/// A polynomial over GF(2^m) in variables `x_0, x_1, ...`.
#[derive(Clone, PartialEq, Eq)]
pub struct MPoly<F> {
    terms: BTreeMap<Monomial, F>,
}

impl<F: Char2Field> MPoly<F> {
    pub fn constant(c: F) -> Self {
        let mut terms = BTreeMap::new();
        if !c.is_zero() {
            terms.insert(Vec::new(), c);
        }
        MPoly { terms }
    }

    pub fn var(i: u32) -> Self {
        MPoly {
            terms: BTreeMap::from([(vec![i], F::one())]),
        }
    }

    pub fn from_terms(terms: impl IntoIterator<Item = (Monomial, F)>) -> Self {
        let mut p = MPoly::zero();
        for (mut m, c) in terms {
            m.sort_unstable();
            p.add_term(m, c);
        }
        p
    }

    fn add_term(&mut self, m: Monomial, c: F) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Occupied(mut e) => {
                let s = *e.get() + c;
                if s.is_zero() {
                    e.remove();
                } else {
                    *e.get_mut() = s;
                }
            }
            std::collections::btree_map::Entry::Vacant(e) => {
                e.insert(c);
            }
        }
    }

    pub fn terms(&self) -> impl Iterator<Item = (&Monomial, &F)> {
        self.terms.iter()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    pub fn degree(&self) -> usize {
        self.terms.keys().map(Vec::len).max().unwrap_or(0)
    }

    pub fn as_constant(&self) -> Option<F> {
        match self.terms.len() {
            0 => Some(F::zero()),
            1 => self.terms.get(&Vec::new()).copied(),
            _ => None,
        }
    }

    pub fn constant_term(&self) -> F {
        self.terms.get(&Vec::new()).copied().unwrap_or_else(F::zero)
    }

    pub fn coefficient(&self, m: &[u32]) -> F {
        self.terms.get(m).copied().unwrap_or_else(F::zero)
    }

    pub fn vars(&self) -> BTreeSet<u32> {
        self.terms.keys().flatten().copied().collect()
    }

    pub fn contains_var(&self, v: u32) -> bool {
        self.terms.keys().any(|m| m.contains(&v))
    }

    /// The part of total degree `d`.
    pub fn homogeneous(&self, d: usize) -> Self {
        MPoly {
            terms: self
                .terms
                .iter()
                .filter(|(m, _)| m.len() == d)
                .map(|(m, c)| (m.clone(), *c))
                .collect(),
        }
    }

    /// Whether `v` occurs only in the monomial `v` itself.
    pub fn is_linear_in(&self, v: u32) -> bool {
        self.terms.keys().all(|m| !m.contains(&v) || m.as_slice() == [v])
    }

    pub fn evaluate(&self, point: &dyn Fn(u32) -> F) -> F {
        let mut acc = F::zero();
        for (m, c) in &self.terms {
            acc = acc + m.iter().fold(*c, |p, &v| p * point(v));
        }
        acc
    }

    /// Replaces `x_v` by `value` everywhere.
    pub fn substitute(&self, v: u32, value: &MPoly<F>) -> Self {
        if !self.contains_var(v) {
            return self.clone();
        }
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            let k = m.iter().filter(|&&x| x == v).count();
            let rest: Monomial = m.iter().copied().filter(|&x| x != v).collect();
            let mut term = MPoly::from_terms([(rest, *c)]);
            for _ in 0..k {
                term = term * value.clone();
            }
            out = out + term;
        }
        out
    }

    /// If every monomial is a square, the unique square root (coefficients
    /// via the inverse Frobenius, exponents halved).
    pub fn square_root(&self) -> Option<Self> {
        let mut out = MPoly::zero();
        for (m, c) in &self.terms {
            if m.len() % 2 == 1 || m.chunks(2).any(|p| p[0] != p[1]) {
                return None;
            }
            out.add_term(m.iter().copied().step_by(2).collect(), c.sqrt());
        }
        Some(out)
    }

    pub fn max_var(&self) -> Option<u32> {
        self.vars().into_iter().max()
    }

    pub fn rename(&self, f: &dyn Fn(u32) -> u32) -> Self {
        MPoly::from_terms(
            self.terms
                .iter()
                .map(|(m, c)| (m.iter().map(|&v| f(v)).collect(), *c)),
        )
    }

    /// Formats with variables named by `name`.
    pub fn display_with(&self, name: &dyn Fn(u32) -> String) -> String {
        if self.terms.is_empty() {
            return "0".to_string();
        }
        let mut parts = Vec::new();
        for (m, c) in self.terms.iter().rev() {
            let mut factors: Vec<String> = Vec::new();
            if !c.is_one() || m.is_empty() {
                factors.push(c.to_hex());
            }
            let mut i = 0;
            while i < m.len() {
                let k = m[i..].iter().take_while(|&&x| x == m[i]).count();
                factors.push(if k == 1 {
                    name(m[i])
                } else {
                    format!("{}^{k}", name(m[i]))
                });
                i += k;
            }
            parts.push(factors.join("*"));
        }
        parts.join(" + ")
    }
}

impl<F: Char2Field> fmt::Debug for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|v| format!("x{v}")))
    }
}

impl<F: Char2Field> fmt::Display for MPoly<F> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.display_with(&|v| format!("x{v}")))
    }
}

impl<F: Char2Field> Zero for MPoly<F> {
    fn zero() -> Self {
        MPoly {
            terms: BTreeMap::new(),
        }
    }

    fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }
}

impl<F: Char2Field> One for MPoly<F> {
    fn one() -> Self {
        MPoly::constant(F::one())
    }
}

impl<F: Char2Field> Add for MPoly<F> {
    type Output = Self;

    fn add(mut self, rhs: Self) -> Self {
        for (m, c) in rhs.terms {
            self.add_term(m, c);
        }
        self
    }
}

impl<F: Char2Field> Mul for MPoly<F> {
    type Output = Self;

    fn mul(self, rhs: Self) -> Self {
        let mut out = MPoly::zero();
        for (a, x) in &self.terms {
            for (b, y) in &rhs.terms {
                let mut m = Vec::with_capacity(a.len() + b.len());
                m.extend_from_slice(a);
                m.extend_from_slice(b);
                m.sort_unstable();
                out.add_term(m, *x * *y);
            }
        }
        out
    }
}

impl<F: Char2Field> Coefficient<F> for MPoly<F> {
    fn from_field(c: F) -> Self {
        MPoly::constant(c)
    }

    fn scale(&self, c: F) -> Self {
        if c.is_zero() {
            return MPoly::zero();
        }
        MPoly {
            terms: self.terms.iter().map(|(m, x)| (m.clone(), *x * c)).collect(),
        }
    }
}
