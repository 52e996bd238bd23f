//! Crate-wide error type.

use crate::subcube::PartitionDefect;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("arity mismatch: expected {expected} bits, got {got}")]
    ArityMismatch { expected: usize, got: usize },

    #[error("{what}: arity cap is {cap}, input needs {need}")]
    CapExceeded {
        what: &'static str,
        cap: usize,
        need: usize,
    },

    #[error("invalid parameter: {0}")]
    InvalidParam(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error("not a valid subcube partition: {0}")]
    Partition(#[from] PartitionDefect),

    #[error("decision tree does not decide the function")]
    TreeMismatch,

    #[error("value out of domain: {0}")]
    Domain(String),
}

pub type Result<T> = std::result::Result<T, Error>;
