use std::fmt;

use thiserror::Error;

/// Which identifier namespace an id belongs to.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum IdKind {
    State,
    Experiment,
    Outcome,
    Measure,
    Property,
}

impl fmt::Display for IdKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            IdKind::State => "state",
            IdKind::Experiment => "experiment",
            IdKind::Outcome => "outcome",
            IdKind::Measure => "measure",
            IdKind::Property => "property",
        })
    }
}

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("unknown {kind} `{id}`")]
    UnknownId { kind: IdKind, id: String },

    #[error("duplicate {kind} `{id}`")]
    DuplicateId { kind: IdKind, id: String },

    #[error("invalid {kind} identifier `{id}`")]
    InvalidId { kind: IdKind, id: String },

    #[error("the set of {kind}s is empty")]
    EmptyKind { kind: IdKind },

    #[error("no outcome set given for ({experiment},{state})")]
    MissingCell { experiment: String, state: String },

    #[error("outcome set of ({experiment},{state}) given twice")]
    DuplicateCell { experiment: String, state: String },

    #[error("outcome set of ({experiment},{state}) is empty")]
    EmptyCell { experiment: String, state: String },

    #[error("declared outcome `{outcome}` occurs in no outcome set")]
    UnusedOutcome { outcome: String },

    #[error("contract violation: {0}")]
    Contract(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity { what: String, needed: u128, limit: u128 },

    #[error("dimension mismatch: expected {expected}, got {actual}")]
    Dimension { expected: usize, actual: usize },

    #[error("kernel consistency check failed: {0}")]
    Consistency(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn contract<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Contract(msg.into()))
}
