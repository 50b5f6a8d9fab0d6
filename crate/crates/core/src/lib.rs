//! Exact computations in characteristic-2 Chevalley groups of type E6, E7
//! and E8: root data, Weyl groups of the A_n Levi subgroups, collection in
//! the unipotent radical, centralizer systems, complete-reducibility checks
//! and the representation families answering Külshammer's question.

pub mod centralizer;
pub mod chevalley;
pub mod crcheck;
pub mod error;
pub mod field;
pub mod kulshammer;
pub mod rootdata;
pub mod weyl;

pub use error::{EngineError, Result};
pub use field::{Char2Field, Field, Gf2m};

pub type Gf2 = Gf2m<1>;
pub type Gf4 = Gf2m<2>;
pub type Gf8 = Gf2m<3>;
pub type Gf16 = Gf2m<4>;
pub type Gf64 = Gf2m<6>;
pub type Gf256 = Gf2m<8>;
pub type Rational = num_rational::Ratio<i64>;
