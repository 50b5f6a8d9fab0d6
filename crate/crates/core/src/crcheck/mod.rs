//! Complete-reducibility verdicts.
mod cases;
mod module;
pub use cases::*;
pub use module::{is_gcr, is_gcr_perm, levi_matrix_model, MatrixModule};
