use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid necklace: {0}")]
    InvalidGrid(String),
    #[error("invalid point set: {0}")]
    InvalidPoints(String),
    #[error("invalid splitting: {0}")]
    InvalidSplitting(String),
    #[error("assignment labels {got} boxes but the splitting has {expected}")]
    AssignmentMismatch { expected: usize, got: usize },
    #[error("target is not half of the piece totals")]
    InvalidTarget,
    #[error("budget {budget} on axis {axis} exceeds the {max} available cut positions")]
    BudgetTooLarge {
        axis: usize,
        budget: usize,
        max: usize,
    },
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("resource budget exceeded: {what} needs {needed}, budget is {budget}")]
    ResourceExceeded {
        what: &'static str,
        needed: u128,
        budget: u128,
    },
    #[error("arithmetic overflow evaluating {0}")]
    Overflow(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
