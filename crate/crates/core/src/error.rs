use thiserror::Error;

use crate::rational::Rational;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected} agents, found {found}")]
    Dimension { expected: usize, found: usize },

    #[error("value {value} outside [1/2, 1)")]
    OutOfRange { value: Rational },

    #[error("invalid input: {0}")]
    Domain(String),

    #[error("degenerate amendment: proposal equals the rule in force ({0})")]
    DegenerateAmendment(Rational),

    #[error("degenerate comparison: both proposals are {0}")]
    DegenerateComparison(Rational),

    #[error("{mode} enumeration supports n <= {bound}, got n = {n}")]
    Capacity {
        mode: &'static str,
        n: usize,
        bound: usize,
    },

    #[error(
        "amendment iteration did not reach a fixpoint within {cap} steps (revisited {revisited})"
    )]
    Cycle { cap: usize, revisited: Rational },

    #[error("property violation: {0}")]
    PropertyViolation(String),

    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
