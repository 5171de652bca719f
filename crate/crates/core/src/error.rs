use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("division by zero")]
    DivisionByZero,
    #[error("denominator vanishes at q = {0}")]
    Pole(String),
    #[error("index out of range: {0}")]
    IndexOutOfRange(String),
    #[error("generator count mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),
    #[error("target co-length {requested} is below the current maximum {current}")]
    CoLengthTooSmall { requested: usize, current: usize },
    #[error("tensor arity mismatch: expected {expected}, found {found}")]
    ArityMismatch { expected: usize, found: usize },
    #[error("convention inconsistency: {0}")]
    Convention(String),
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },
    #[error("basis image e_{index} exceeds the basis bound {bound}")]
    BasisOutOfRange { index: u128, bound: u128 },
    #[error("unknown suite `{0}`")]
    UnknownSuite(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

pub type Result<T> = std::result::Result<T, Error>;
