//! The two representation families with pairwise non-conjugate members
//! whose restrictions to a Sylow 2-subgroup are all conjugate.
mod a2;
mod e6;
mod presentation;

pub use a2::{elementary, A2Family, A2Ops, A2Report, AugmentedMatrix};
pub use e6::{sl2_elements, E6Family, E6Nonconjugacy, E6Report, Representation, Sl2, TorusTupleCentralizer};
pub use presentation::{FinitePresentation, GroupOps, Relation, RelationCheck};

#[cfg(test)]
mod tests;
