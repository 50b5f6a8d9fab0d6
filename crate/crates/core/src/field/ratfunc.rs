use std::fmt;

use crate::error::{EngineError, Result};

/// Polynomial over F2 in one variable `t`, bit `i` of the packed words being
/// the coefficient of `t^i`. Always normalized (no trailing zero words).
#[derive(Clone, PartialEq, Eq, Hash, Default)]
pub struct F2Poly {
    words: Vec<u64>,
}

impl F2Poly {
    pub fn zero() -> Self {
        F2Poly { words: Vec::new() }
    }

    pub fn one() -> Self {
        F2Poly { words: vec![1] }
    }

    /// `t`
    pub fn t() -> Self {
        F2Poly { words: vec![2] }
    }

    /// Polynomial with the listed exponents set.
    pub fn from_exponents(exps: &[usize]) -> Self {
        let mut p = F2Poly::zero();
        for &e in exps {
            p.flip(e);
        }
        p
    }

    fn normalize(mut self) -> Self {
        while self.words.last() == Some(&0) {
            self.words.pop();
        }
        self
    }

    fn flip(&mut self, e: usize) {
        let w = e / 64;
        if self.words.len() <= w {
            self.words.resize(w + 1, 0);
        }
        self.words[w] ^= 1 << (e % 64);
        let n = std::mem::take(self).normalize();
        *self = n;
    }

    pub fn is_zero(&self) -> bool {
        self.words.is_empty()
    }

    pub fn degree(&self) -> Option<usize> {
        let last = *self.words.last()?;
        Some((self.words.len() - 1) * 64 + 63 - last.leading_zeros() as usize)
    }

    pub fn coeff(&self, e: usize) -> bool {
        self.words.get(e / 64).is_some_and(|w| w >> (e % 64) & 1 == 1)
    }

    pub fn exponents(&self) -> Vec<usize> {
        match self.degree() {
            None => Vec::new(),
            Some(d) => (0..=d).filter(|&e| self.coeff(e)).collect(),
        }
    }

    pub fn add(&self, other: &Self) -> Self {
        let n = self.words.len().max(other.words.len());
        let words = (0..n)
            .map(|i| self.words.get(i).unwrap_or(&0) ^ other.words.get(i).unwrap_or(&0))
            .collect();
        F2Poly { words }.normalize()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = F2Poly::zero();
        for e in other.exponents() {
            out = out.add(&self.shl(e));
        }
        out
    }

    fn shl(&self, k: usize) -> Self {
        let mut p = F2Poly::zero();
        for e in self.exponents() {
            p.flip(e + k);
        }
        p
    }

    /// Euclidean division; fails when dividing by zero.
    pub fn div_rem(&self, d: &Self) -> Result<(Self, Self)> {
        let dd = d.degree().ok_or(EngineError::DivisionByZero)?;
        let mut q = F2Poly::zero();
        let mut r = self.clone();
        while let Some(dr) = r.degree() {
            if dr < dd {
                break;
            }
            q.flip(dr - dd);
            r = r.add(&d.shl(dr - dd));
        }
        Ok((q, r))
    }

    pub fn gcd(&self, other: &Self) -> Self {
        let (mut a, mut b) = (self.clone(), other.clone());
        while !b.is_zero() {
            let r = a.div_rem(&b).expect("b nonzero").1;
            a = b;
            b = r;
        }
        a
    }

    /// A polynomial over F2 is a square iff only even exponents occur.
    pub fn is_square(&self) -> bool {
        self.exponents().iter().all(|e| e % 2 == 0)
    }
}

impl fmt::Debug for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{self}")
    }
}

impl fmt::Display for F2Poly {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let terms: Vec<String> = self
            .exponents()
            .into_iter()
            .rev()
            .map(|e| match e {
                0 => "1".to_string(),
                1 => "t".to_string(),
                _ => format!("t^{e}"),
            })
            .collect();
        write!(f, "{}", terms.join("+"))
    }
}

/// Element of the nonperfect field F2(t), kept reduced with a monic
/// (over F2 every nonzero polynomial is monic) nonzero denominator.
#[derive(Clone, PartialEq, Eq, Debug)]
pub struct RationalFunction {
    num: F2Poly,
    den: F2Poly,
}

impl RationalFunction {
    pub fn new(num: F2Poly, den: F2Poly) -> Result<Self> {
        if den.is_zero() {
            return Err(EngineError::DivisionByZero);
        }
        if num.is_zero() {
            return Ok(RationalFunction {
                num,
                den: F2Poly::one(),
            });
        }
        let g = num.gcd(&den);
        let num = num.div_rem(&g)?.0;
        let den = den.div_rem(&g)?.0;
        Ok(RationalFunction { num, den })
    }

    pub fn from_poly(p: F2Poly) -> Self {
        RationalFunction {
            num: p,
            den: F2Poly::one(),
        }
    }

    pub fn numerator(&self) -> &F2Poly {
        &self.num
    }

    pub fn denominator(&self) -> &F2Poly {
        &self.den
    }

    pub fn mul(&self, other: &Self) -> Self {
        Self::new(self.num.mul(&other.num), self.den.mul(&other.den))
            .expect("denominators are nonzero")
    }

    /// Whether `self = g^2` for some `g` in F2(t).
    ///
    /// For a reduced fraction this holds iff numerator and denominator are
    /// both squares, i.e. all their exponents are even.
    pub fn is_square(&self) -> bool {
        self.num.is_square() && self.den.is_square()
    }
}

impl fmt::Display for RationalFunction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == F2Poly::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({})/({})", self.num, self.den)
        }
    }
}
