use thiserror::Error;

/// Errors raised across the crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("directedness mismatch: hypergraph is {found}, expected {expected}")]
    DirectednessMismatch { expected: &'static str, found: &'static str },

    #[error("unknown node {0}")]
    UnknownNode(u32),

    #[error("unknown hyperedge label {0}")]
    UnknownEdge(u32),

    #[error("a move needs two distinct items, got {0} twice")]
    SameItem(u32),

    #[error("hyperedge {0} is empty")]
    EmptyEdge(u32),

    #[error("hypergraph is not in space {0}")]
    NotInSpace(String),

    #[error("need at least {needed} {what}, found {found}")]
    TooFew { what: &'static str, needed: usize, found: usize },

    #[error("{what} out of range: {value} (allowed {allowed})")]
    OutOfRange { what: &'static str, value: u64, allowed: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("state cap exceeded: {0}")]
    CapExceeded(String),

    #[error("state space is empty")]
    EmptySpace,

    #[error("matrix is not row-stochastic: {0}")]
    NotStochastic(String),

    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("invalid input: {0}")]
    Invalid(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
