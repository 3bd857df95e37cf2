use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("edge {edge} ({u}, {v}) has nonpositive weight")]
    NonpositiveWeight { edge: usize, u: usize, v: usize },

    #[error("edge {edge} is a self-loop at vertex {vertex}")]
    SelfLoop { edge: usize, vertex: usize },

    #[error("edge {edge} duplicates an earlier edge between {u} and {v}")]
    ParallelEdge { edge: usize, u: usize, v: usize },

    #[error("terminal vertex {0} appears more than once")]
    DuplicateTerminal(usize),

    #[error("cycle detected in a graph declared acyclic")]
    CycleDetected,

    #[error("graph is not weakly connected")]
    NotConnected,

    #[error("operation requires {expected}")]
    WrongMode { expected: &'static str },

    #[error("operation requires {expected} terminal pairs, graph has {found}")]
    TerminalCount { expected: String, found: usize },

    #[error("product graph too large: {reason}")]
    ProductTooLarge { reason: String },

    #[error("enumeration limit of {limit} exceeded")]
    LimitExceeded { limit: usize },

    #[error("search gave up after {attempts} restarts")]
    SearchExhausted { attempts: usize },

    #[error("invalid clique instance: {0}")]
    InvalidClique(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
}

impl Error {
    pub(crate) fn parse(line: usize, message: impl Into<String>) -> Self {
        Error::Parse { line, message: message.into() }
    }
}
