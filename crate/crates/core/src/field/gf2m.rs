use std::fmt;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub};

use num_traits::{One, Zero};

use super::{Char2Field, Field};
use crate::error::{EngineError, Result};

/// Remainder of carry-less division `a mod b` over F2.
const fn clmod(mut a: u64, b: u64) -> u64 {
    let db = 63 - b.leading_zeros();
    while a != 0 {
        let da = 63 - a.leading_zeros();
        if da < db {
            break;
        }
        a ^= b << (da - db);
    }
    a
}

const fn is_irreducible(p: u64, deg: u32) -> bool {
    let mut q = 2u64;
    while q < (1u64 << (deg / 2 + 1)) {
        if clmod(p, q) == 0 {
            return false;
        }
        q += 1;
    }
    true
}

/// Lexicographically least irreducible polynomial of degree `m` over F2,
/// encoded with bit `i` holding the coefficient of `x^i`.
pub const fn modulus_for_degree(m: u32) -> u32 {
    assert!(m >= 1 && m <= 16, "extension degree must lie in 1..=16");
    let mut p = 1u64 << m;
    while p < (1u64 << (m + 1)) {
        if is_irreducible(p, m) {
            return p as u32;
        }
        p += 1;
    }
    panic!("no irreducible polynomial found")
}

/// An element of GF(2^M) = F2[x]/(f) with `f = modulus_for_degree(M)`.
#[derive(Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Default)]
pub struct Gf2m<const M: u32>(u32);

impl<const M: u32> Gf2m<M> {
    pub const MODULUS: u32 = modulus_for_degree(M);
    const MASK: u32 = ((1u64 << M) - 1) as u32;

    pub const fn new(bits: u32) -> Self {
        assert!(bits <= Self::MASK, "encoding out of range");
        Gf2m(bits)
    }

    /// The class of `x`, a root of the modulus.
    pub fn generator() -> Self {
        if M == 1 {
            Gf2m(1)
        } else {
            Gf2m(2)
        }
    }

    fn mul_raw(a: u32, b: u32) -> u32 {
        let mut acc = 0u64;
        let mut a = a as u64;
        let mut b = b;
        while b != 0 {
            if b & 1 == 1 {
                acc ^= a;
            }
            a <<= 1;
            b >>= 1;
        }
        clmod(acc, Self::MODULUS as u64) as u32
    }
}

impl<const M: u32> fmt::Debug for Gf2m<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl<const M: u32> fmt::Display for Gf2m<M> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}", self.to_hex())
    }
}

impl<const M: u32> Add for Gf2m<M> {
    type Output = Self;
    fn add(self, rhs: Self) -> Self {
        Gf2m(self.0 ^ rhs.0)
    }
}

impl<const M: u32> AddAssign for Gf2m<M> {
    fn add_assign(&mut self, rhs: Self) {
        self.0 ^= rhs.0;
    }
}

impl<const M: u32> Sub for Gf2m<M> {
    type Output = Self;
    fn sub(self, rhs: Self) -> Self {
        Gf2m(self.0 ^ rhs.0)
    }
}

impl<const M: u32> Neg for Gf2m<M> {
    type Output = Self;
    fn neg(self) -> Self {
        self
    }
}

impl<const M: u32> Mul for Gf2m<M> {
    type Output = Self;
    fn mul(self, rhs: Self) -> Self {
        Gf2m(Self::mul_raw(self.0, rhs.0))
    }
}

impl<const M: u32> MulAssign for Gf2m<M> {
    fn mul_assign(&mut self, rhs: Self) {
        *self = *self * rhs;
    }
}

impl<const M: u32> Div for Gf2m<M> {
    type Output = Self;
    /// Panics on division by zero; use [`Field::try_inv`] for a checked path.
    fn div(self, rhs: Self) -> Self {
        self * rhs.try_inv().expect("division by zero in GF(2^m)")
    }
}

impl<const M: u32> Zero for Gf2m<M> {
    fn zero() -> Self {
        Gf2m(0)
    }
    fn is_zero(&self) -> bool {
        self.0 == 0
    }
}

impl<const M: u32> One for Gf2m<M> {
    fn one() -> Self {
        Gf2m(1)
    }
}

impl<const M: u32> Field for Gf2m<M> {
    fn try_inv(&self) -> Result<Self> {
        if self.0 == 0 {
            return Err(EngineError::DivisionByZero);
        }
        // x^(2^m - 2)
        Ok(Field::pow(self, (1u64 << M) - 2))
    }
}

impl<const M: u32> Char2Field for Gf2m<M> {
    const DEGREE: u32 = M;

    fn from_bits(bits: u32) -> Self {
        Gf2m::new(bits)
    }

    fn bits(&self) -> u32 {
        self.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::{Gf16, Gf2, Gf4, Gf8};

    #[test]
    fn moduli_are_lexicographically_least_irreducibles() {
        let expected = [
            0x2, 0x7, 0xb, 0x13, 0x25, 0x43, 0x83, 0x11b, 0x203, 0x409, 0x805, 0x1009, 0x201b,
            0x4021, 0x8003, 0x1002b,
        ];
        for (m, &p) in (1..=16).zip(expected.iter()) {
            assert_eq!(modulus_for_degree(m), p, "degree {m}");
        }
    }

    #[test]
    fn gf4_generator_has_order_three() {
        let b = Gf4::generator();
        assert_ne!(b, Gf4::one());
        assert_eq!(b * b * b, Gf4::one());
        assert_eq!(b.multiplicative_order(), Some(3));
    }

    #[test]
    fn sqrt_inverts_squaring_in_gf16() {
        for x in Gf16::elements() {
            assert_eq!(x.sqrt().frobenius(), x);
            assert_eq!(x.frobenius().sqrt(), x);
        }
    }

    #[test]
    fn squaring_is_additive_in_gf8() {
        for x in Gf8::elements() {
            for y in Gf8::elements() {
                assert_eq!((x + y).frobenius(), x.frobenius() + y.frobenius());
            }
        }
    }

    #[test]
    fn every_nonzero_element_is_invertible() {
        for x in Gf16::nonzero_elements() {
            assert_eq!(x * x.try_inv().unwrap(), Gf16::one());
        }
        assert!(Gf16::zero().try_inv().is_err());
        assert!(Gf2::zero().try_inv().is_err());
    }

    #[test]
    fn frobenius_fixes_after_m_steps() {
        for x in Gf16::elements() {
            let mut y = x;
            for _ in 0..4 {
                y = y.frobenius();
            }
            assert_eq!(y, x);
        }
    }

    #[test]
    fn hex_round_trip() {
        for x in Gf16::elements() {
            assert_eq!(Gf16::from_hex(&x.to_hex()).unwrap(), x);
        }
        assert!(Gf4::from_hex("4").is_err());
    }

    #[test]
    fn element_of_order_five_lives_in_gf16_not_gf4() {
        assert!(Gf4::element_of_order(5).is_err());
        let c = Gf16::element_of_order(5).unwrap();
        assert_eq!(c.multiplicative_order(), Some(5));
    }
}
