use thiserror::Error;

/// Everything that can go wrong in the library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("precision exhausted: {0}")]
    PrecisionExhausted(String),
    #[error("indeterminate form: {0}")]
    IndeterminateForm(String),
    #[error("prime mismatch: {0} vs {1}")]
    PrimeMismatch(u32, u32),
    #[error("{0} is not a prime")]
    NotPrime(u64),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("division by exact zero")]
    DivisionByZero,
    #[error("point outside the certified disk: valuation {valuation} must exceed {threshold}")]
    DivergentPoint { valuation: String, threshold: String },
    #[error("vector not in E_alpha: alpha exponent {alpha} is below the type exponent {sigma}")]
    DivergentNorm { alpha: String, sigma: String },
    #[error("invalid problem: {0}")]
    InvalidProblem(String),
    #[error("insufficient degree: need {needed}, have {have}")]
    InsufficientDegree { needed: u32, have: u32 },
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
