use thiserror::Error;

use crate::field::FieldCtx;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("field mismatch: {0} vs {1}")]
    CtxMismatch(FieldCtx, FieldCtx),
    #[error("{0} is not a prime below 2^62")]
    NotPrime(u64),
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("index {index} out of range 0..={max}")]
    IndexOutOfRange { index: usize, max: usize },
    #[error("{0} is a root of unity of order <= d")]
    RootOfUnity(String),
    #[error("parameter sequence is not feasible")]
    NotFeasible,
    #[error("unsupported diameter d = {0}; need d >= 3")]
    UnsupportedDiameter(usize),
    #[error("constraint violated: {0}")]
    ConstraintViolated(&'static str),
    #[error("eigenvalues not mutually distinct")]
    NotDistinct,
    #[error("inconsistent type: {0}")]
    InconsistentType(String),
    #[error("not applicable: {0}")]
    NotApplicable(&'static str),
    #[error("word is not a zigzag word of bracket type [n]")]
    NotZigzagBracketType,
    #[error("no feasible sample found after {0} attempts")]
    SamplingFailed(usize),
    #[error("limit exceeded: {0}")]
    LimitExceeded(String),
    #[error("parse error: {0}")]
    Parse(String),
}
