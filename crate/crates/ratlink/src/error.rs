use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("0/0 is not a rational number")]
    Indeterminate,
    #[error("operation is undefined at infinity")]
    Infinite,
    #[error("continued fraction has no terms")]
    Empty,
    #[error("partial denominator does not fit in 64 bits")]
    Overflow,
    #[error("invalid fraction {p}/{q}: {reason}")]
    InvalidFraction { q: i64, p: i64, reason: &'static str },
    #[error("index {index} out of range for length {len}")]
    Index { index: usize, len: usize },
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("exceptional primitive block: no all-even image exists")]
    Exceptional,
    #[error("continued fraction has no primitive block decomposition")]
    NoDecomposition,
    #[error("matrix argument {0} is odd")]
    OddArgument(i64),
    #[error("signed vector has even length {0}")]
    EvenLength(usize),
    #[error("odd sum {0} cannot be halved")]
    OddSum(i64),
    #[error("braid index formulas disagree: {0}")]
    Disagreement(String),
    #[error("invariant violated: {0}")]
    Invariant(String),
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
