use mfo_core::CoreError;
use mfo_logic::LogicError;
use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum LabError {
    #[error("budget exceeded: {what} = {value}, limit {limit}")]
    Budget { what: &'static str, value: usize, limit: usize },
    #[error("{0}")]
    Invalid(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("formula has free variables: {0}")]
    NotSentence(String),
    #[error(transparent)]
    Logic(#[from] LogicError),
    #[error(transparent)]
    Core(#[from] CoreError),
}

impl LabError {
    pub fn is_budget(&self) -> bool {
        matches!(self, LabError::Budget { .. } | LabError::Logic(LogicError::EfBudget { .. }))
    }
}
