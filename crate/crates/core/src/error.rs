use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("division by zero")]
    DivisionByZero,
    #[error("no element of multiplicative order {order} in GF(2^{degree})")]
    NoElementOfOrder { order: u64, degree: u32 },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("unknown root system type `{0}`")]
    UnknownType(String),
    #[error("letter `{0}` is not a simple root of the Levi subgroup")]
    NotALeviLetter(String),
    #[error("label {0} does not index a root of the unipotent radical")]
    UnknownLabel(u32),
    #[error("generators do not stabilize the domain")]
    DomainNotStable,
    #[error("symmetric-group degree {0} outside the supported range 2..=8")]
    DegreeOutOfRange(usize),
    #[error("element has a nontrivial unipotent part")]
    UnipotentPart,
    #[error("module too large: dimension {dim} over GF(2^{degree})")]
    ModuleTooLarge { dim: usize, degree: u32 },
    #[error("no integral cocharacter within multiplier bound {0}")]
    NoIntegralCocharacter(i64),
    #[error("unknown case {case} for {ty}")]
    UnknownCase { ty: String, case: usize },
    #[error("solver inconsistency: {0}")]
    Solver(String),
    #[error("embedded table check failed: {0}")]
    Table(String),
    #[error("relator `{0}` does not map to the identity")]
    Relator(String),
}

pub type Result<T> = std::result::Result<T, EngineError>;
