use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum StatsError {
    #[error("sets overlap at position {0}")]
    Overlap(usize),
    #[error("position {pos} outside [1, {n}]")]
    OutOfRange { pos: usize, n: usize },
    #[error("graphs disagree on the vertex count: {0} vs {1}")]
    VertexMismatch(usize, usize),
    #[error("vertex sets do not partition [0, {0})")]
    NotPartition(usize),
    #[error("graphs do not encode the arithmetic relations")]
    ArithFailed,
    #[error("undefined: {0}")]
    Undefined(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("{0}")]
    Invalid(String),
    #[error(transparent)]
    Logic(#[from] mfo_logic::LogicError),
    #[error(transparent)]
    Core(#[from] mfo_core::CoreError),
}
