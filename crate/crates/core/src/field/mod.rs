//! Exact field arithmetic: the scalar abstraction used throughout the engine,
//! binary extension fields GF(2^m), bit-packed F2 matrices, generic dense
//! linear algebra, and rational functions over F2.

mod f2matrix;
mod gf2m;
mod linalg;
mod ratfunc;

pub use f2matrix::F2Matrix;
pub use gf2m::{modulus_for_degree, Gf2m};
pub use linalg::Matrix;
pub use ratfunc::{F2Poly, RationalFunction};

use num_rational::Ratio;
use num_traits::{One, Zero};
use std::fmt::Debug;
use std::hash::Hash;
use std::ops::{Add, Mul, Neg, Sub};

use crate::error::{EngineError, Result};

/// A commutative field with exact arithmetic.
///
/// Built on the `num-traits` identities so that generic code can be written
/// once and instantiated for `GF(2^m)` and for the rationals.
pub trait Field:
    Clone
    + PartialEq
    + Debug
    + Zero
    + One
    + Add<Output = Self>
    + Sub<Output = Self>
    + Mul<Output = Self>
    + Neg<Output = Self>
    + Send
    + Sync
{
    /// Multiplicative inverse; zero has none.
    fn try_inv(&self) -> Result<Self>;

    fn pow(&self, mut e: u64) -> Self {
        let mut base = self.clone();
        let mut acc = Self::one();
        while e > 0 {
            if e & 1 == 1 {
                acc = acc * base.clone();
            }
            base = base.clone() * base;
            e >>= 1;
        }
        acc
    }

    /// `self^e` for a signed exponent; fails for `0^(negative)`.
    fn powi(&self, e: i64) -> Result<Self> {
        if e >= 0 {
            Ok(self.pow(e as u64))
        } else {
            Ok(self.try_inv()?.pow(e.unsigned_abs()))
        }
    }
}

/// A finite field of characteristic two with a fixed, bit-exact encoding.
pub trait Char2Field: Field + Copy + Eq + Hash + Ord + 'static {
    /// Extension degree `m` over F2.
    const DEGREE: u32;

    /// Number of elements, `2^m`.
    fn order() -> u64 {
        1u64 << Self::DEGREE
    }

    /// Element with the given polynomial-coordinate encoding.
    fn from_bits(bits: u32) -> Self;

    /// Polynomial-coordinate encoding (bit `i` is the coefficient of `x^i`).
    fn bits(&self) -> u32;

    /// `x -> x^2`.
    fn frobenius(&self) -> Self {
        *self * *self
    }

    /// The unique square root, `x^(2^(m-1))`.
    fn sqrt(&self) -> Self {
        let mut r = *self;
        for _ in 1..Self::DEGREE {
            r = r * r;
        }
        r
    }

    /// All field elements in encoding order.
    fn elements() -> Vec<Self> {
        (0..Self::order() as u32).map(Self::from_bits).collect()
    }

    fn nonzero_elements() -> Vec<Self> {
        (1..Self::order() as u32).map(Self::from_bits).collect()
    }

    /// Multiplicative order of a nonzero element.
    fn multiplicative_order(&self) -> Option<u64> {
        if self.is_zero() {
            return None;
        }
        let mut x = *self;
        let mut k = 1u64;
        while !x.is_one() {
            x = x * *self;
            k += 1;
        }
        Some(k)
    }

    /// Least-encoded element of exact multiplicative order `d`.
    fn element_of_order(d: u64) -> Result<Self> {
        Self::nonzero_elements()
            .into_iter()
            .find(|x| x.multiplicative_order() == Some(d))
            .ok_or(EngineError::NoElementOfOrder {
                order: d,
                degree: Self::DEGREE,
            })
    }

    /// Hexadecimal encoding of the polynomial coordinates.
    fn to_hex(&self) -> String {
        let width = (Self::DEGREE as usize).div_ceil(4).max(1);
        format!("{:0width$x}", self.bits(), width = width)
    }

    fn from_hex(s: &str) -> Result<Self> {
        let bits = u32::from_str_radix(s.trim_start_matches("0x"), 16)
            .map_err(|_| EngineError::Parse(format!("bad field element `{s}`")))?;
        if u64::from(bits) >= Self::order() {
            return Err(EngineError::Parse(format!(
                "element `{s}` out of range for GF(2^{})",
                Self::DEGREE
            )));
        }
        Ok(Self::from_bits(bits))
    }
}

impl Field for Ratio<i64> {
    fn try_inv(&self) -> Result<Self> {
        if self.is_zero() {
            Err(EngineError::DivisionByZero)
        } else {
            Ok(self.recip())
        }
    }
}

/// The field embedding GF(2^a) → GF(2^b) for a | b, sending the class of
/// `x` to the least-encoded root of the source modulus.
#[derive(Clone, Debug)]
pub struct Embedding<F, G> {
    powers: Vec<G>,
    _src: std::marker::PhantomData<F>,
}

impl<F: Char2Field, G: Char2Field> Embedding<F, G> {
    pub fn new() -> Option<Self> {
        if G::DEGREE % F::DEGREE != 0 {
            return None;
        }
        let modulus = modulus_for_degree(F::DEGREE);
        let root = G::elements().into_iter().find(|y| {
            let mut acc = G::zero();
            for k in (0..=F::DEGREE).rev() {
                acc = acc * *y;
                if modulus >> k & 1 == 1 {
                    acc = acc + G::one();
                }
            }
            acc.is_zero()
        })?;
        let powers = (0..F::DEGREE).map(|k| Field::pow(&root, u64::from(k))).collect();
        Some(Embedding {
            powers,
            _src: std::marker::PhantomData,
        })
    }

    pub fn apply(&self, x: F) -> G {
        let bits = x.bits();
        self.powers
            .iter()
            .enumerate()
            .filter(|(k, _)| bits >> k & 1 == 1)
            .fold(G::zero(), |acc, (_, p)| acc + *p)
    }
}

#[cfg(test)]
mod embedding_tests {
    use super::*;
    use crate::{Gf16, Gf2, Gf4, Gf64, Gf8};

    fn check<F: Char2Field, G: Char2Field>() {
        let e = Embedding::<F, G>::new().unwrap();
        for x in F::elements() {
            for y in F::elements() {
                assert_eq!(e.apply(x + y), e.apply(x) + e.apply(y));
                assert_eq!(e.apply(x * y), e.apply(x) * e.apply(y));
            }
        }
    }

    #[test]
    fn embeddings_are_ring_maps() {
        check::<Gf2, Gf4>();
        check::<Gf4, Gf16>();
        check::<Gf4, Gf64>();
        check::<Gf8, Gf64>();
        assert!(Embedding::<Gf4, Gf8>::new().is_none());
    }
}
