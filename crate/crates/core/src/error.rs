use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum CoreError {
    #[error("not a permutation of [n]: {0:?}")]
    NotAPermutation(Vec<usize>),
    #[error("entries are not distinct")]
    NotDistinct,
    #[error("cannot parse permutation from {0:?}")]
    Parse(String),
    #[error("prefix length {j} out of range for n = {n}")]
    PrefixOutOfRange { j: usize, n: usize },
    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },
    #[error("q must be a positive finite real, got {0}")]
    InvalidQ(f64),
    #[error("truncated geometric parameter p = 0: use the uniform branch")]
    UseUniformBranch,
    #[error("truncated geometric requires p < 1, got {0}")]
    InvalidP(f64),
    #[error("truncated geometric requires support size m >= 1")]
    EmptySupport,
    #[error("regenerative construction requires 0 < q < 1, got {0}")]
    NotRecurrent(f64),
    #[error("{0} is too large to represent")]
    TooLarge(String),
}
