use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("incompatible context: {0}")]
    IncompatibleContext(String),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("contract violation: {0}")]
    Contract(String),
    #[error("infeasible: {0}")]
    Infeasible(String),
    #[error("degree {degree} beyond configured bound {bound}")]
    DegreeBound { degree: i64, bound: i64 },
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
