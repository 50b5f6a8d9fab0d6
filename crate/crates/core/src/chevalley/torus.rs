use crate::error::{EngineError, Result};
use crate::field::Char2Field;
use crate::rootdata::{LabeledRootSystem, Root};
use crate::weyl::WeylElement;

/// `Π α_i∨(c_i)` over the simple coroots. In the simply-connected group
/// these coordinates are unique.
#[derive(Clone, Copy, PartialEq, Eq, Hash, Debug)]
pub struct TorusElement<F> {
    coords: [F; 8],
    rank: u8,
}

impl<F: Char2Field> TorusElement<F> {
    pub fn identity(rank: usize) -> Self {
        TorusElement {
            coords: [F::one(); 8],
            rank: rank as u8,
        }
    }

    pub fn new(coords: &[F]) -> Result<Self> {
        if coords.len() > 8 {
            return Err(EngineError::DegreeOutOfRange(coords.len()));
        }
        if coords.iter().any(|c| c.is_zero()) {
            return Err(EngineError::DivisionByZero);
        }
        let mut t = Self::identity(coords.len());
        t.coords[..coords.len()].copy_from_slice(coords);
        Ok(t)
    }

    /// `ξ∨(c)` for a root ξ (simply laced, so ξ∨ has the coefficients of ξ).
    pub fn coroot(xi: &Root, c: F) -> Result<Self> {
        let coords: Vec<F> = xi.0.iter().map(|&k| c.powi(k as i64)).collect::<Result<_>>()?;
        Self::new(&coords)
    }

    pub fn rank(&self) -> usize {
        self.rank as usize
    }

    pub fn coords(&self) -> &[F] {
        &self.coords[..self.rank()]
    }

    pub fn is_identity(&self) -> bool {
        self.coords().iter().all(|c| c.is_one())
    }

    /// ζ(t) = Π c_i^⟨ζ, α_i∨⟩.
    pub fn eval(&self, sys: &LabeledRootSystem, zeta: &Root) -> F {
        let mut acc = F::one();
        for (i, c) in self.coords().iter().enumerate() {
            let e = sys.pairing_simple(zeta, i) as i64;
            acc = acc * c.powi(e).expect("torus coordinates are nonzero");
        }
        acc
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut t = *self;
        for i in 0..self.rank() {
            t.coords[i] = self.coords[i] * other.coords[i];
        }
        t
    }

    pub fn inverse(&self) -> Self {
        let mut t = *self;
        for i in 0..self.rank() {
            t.coords[i] = self.coords[i].try_inv().expect("torus coordinates are nonzero");
        }
        t
    }

    /// `w t w⁻¹ = Π (w α_i)∨(c_i)`.
    pub fn conjugate_by(&self, sys: &LabeledRootSystem, w: &WeylElement) -> Self {
        let mut t = Self::identity(self.rank());
        for i in 0..self.rank() {
            let img = w.simple_image(sys, i);
            for j in 0..self.rank() {
                let f = self.coords[i].powi(img.0[j] as i64).expect("nonzero");
                t.coords[j] = t.coords[j] * f;
            }
        }
        t
    }
}

/// All w in `group` with `w t w⁻¹ = t` for every `t` in `ts`.
pub fn weyl_fixing_torus<F: Char2Field>(
    sys: &LabeledRootSystem,
    group: &[WeylElement],
    ts: &[TorusElement<F>],
) -> Vec<WeylElement> {
    group
        .iter()
        .filter(|w| ts.iter().all(|t| t.conjugate_by(sys, w) == *t))
        .cloned()
        .collect()
}
