use thiserror::Error;

use crate::formula::Signature;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum LogicError {
    #[error("syntax error at offset {offset}: {message}")]
    Syntax { offset: usize, message: String },
    #[error("relation {relation} is not in the {signature} signature (offset {offset})")]
    UnknownRelation { relation: String, signature: Signature, offset: usize },
    #[error("free variable {0} is unbound")]
    Unbound(String),
    #[error("variable {var} assigned {value}, outside [1, {n}]")]
    OutOfDomain { var: String, value: usize, n: usize },
    #[error("{0}: TOTO only")]
    TotoOnly(&'static str),
    #[error("EF budget exceeded: n = {n}, d = {d}")]
    EfBudget { n: usize, d: usize },
    #[error("{0}")]
    Invalid(String),
}
