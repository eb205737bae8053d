use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at offset {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown variable `{name}` at offset {pos}")]
    UnknownVariable { pos: usize, name: String },

    #[error("non-homogeneous polynomial: found terms of degree {first} and {second}")]
    NonHomogeneous { first: u32, second: u32 },

    #[error("index {index} out of range for {len} variables")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("computation budget exhausted: {0}")]
    BudgetExhausted(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("wrong dimension: expected {expected}, found {found}")]
    WrongDimension { expected: i64, found: i64 },

    #[error("curve is singular: {0}")]
    SingularCurve(String),

    #[error("threefold is singular along the curve: {0}")]
    SingularAlongCurve(String),

    #[error("sheaf kernel not locally free along L: restricted forms have a common zero, ideal {0}")]
    CommonZero(String),

    #[error("map has rank zero")]
    RankZero,

    #[error("invalid input: {0}")]
    InvalidInput(String),
}

impl Error {
    pub fn is_budget(&self) -> bool {
        matches!(self, Error::BudgetExhausted(_))
    }
}

pub type Result<T> = std::result::Result<T, Error>;
