use thiserror::Error;

/// Errors raised by the curve, scan, group and series operations.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid curve: {0}")]
    InvalidCurve(String),
    #[error("point is not on the curve: {0}")]
    NotOnCurve(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("inconsistent group order: {order} does not annihilate the point")]
    OrderInconsistent { order: u64 },
    #[error("bad reduction at p = {0}")]
    BadReduction(u64),
    #[error("hypothesis violated: {0}")]
    Hypothesis(String),
    #[error("no good primes up to {0}")]
    EmptyPrimeRange(u64),
    #[error("resource budget exceeded: {0}")]
    Budget(String),
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("series has coefficients up to index {available}, index {needed} requested")]
    InsufficientCoefficients { needed: usize, available: usize },
    #[error("parse error: {0}")]
    Parse(String),
    #[error("cache error: {0}")]
    Cache(String),
}

pub type Result<T> = std::result::Result<T, Error>;
