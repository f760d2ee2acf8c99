use thiserror::Error;

use crate::model::Violation;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid algebra expression: {}", join(.0))]
    Invalid(Vec<Violation>),

    #[error("hypothesis not met: {0}")]
    HypothesisNotMet(String),

    #[error("unsupported algebra class: {0}")]
    UnsupportedAlgebraClass(String),

    #[error("precondition violated: {0}")]
    PreconditionViolated(String),

    /// Two certified routes to the same quantity disagree. Always a bug.
    #[error("internal consistency failure: {0}")]
    Inconsistent(String),
}

impl Error {
    pub fn is_internal(&self) -> bool {
        matches!(self, Error::Inconsistent(_))
    }
}

fn join(violations: &[Violation]) -> String {
    violations
        .iter()
        .map(ToString::to_string)
        .collect::<Vec<_>>()
        .join("; ")
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
