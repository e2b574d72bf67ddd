use thiserror::Error;

/// Errors shared across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("parse error: {0}")]
    Parse(String),
    #[error("reversal {lo}..{hi} out of bounds for permutation of size {n}")]
    RangeOutOfBounds { lo: usize, hi: usize, n: usize },
    #[error("permutation must have size at least 1")]
    EmptySize,
    #[error("permutation is not commuting (strong interval tree has {primes} prime vertices)")]
    NotCommuting { primes: usize },
    #[error("invalid strong interval tree: {0}")]
    InvalidTree(String),
    #[error("sign assignment covers {given} vertices but {needed} are unassigned")]
    IncompleteAssignment { given: usize, needed: usize },
    #[error("exponential budget exceeded: {unassigned} unassigned prime vertices, cap is {cap}")]
    BudgetExceeded { unassigned: usize, cap: usize },
    #[error("size {n} exceeds cap {cap} for exhaustive search")]
    SizeCap { n: usize, cap: usize },
    #[error("io error: {0}")]
    Io(#[from] std::io::Error),
    #[error("json error: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
