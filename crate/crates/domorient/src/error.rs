use thiserror::Error;

use crate::graph::{EdgeId, VertexId};

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("not connected")]
    NotConnected,
    #[error("not bridgeless: edge {0} is a bridge")]
    NotBridgeless(EdgeId),
    #[error("unknown vertex {0}")]
    UnknownVertex(VertexId),
    #[error("unknown edge {0}")]
    UnknownEdge(EdgeId),
    #[error("self-loop at vertex {0}")]
    SelfLoop(VertexId),
    #[error("orientation is not strong")]
    NotStrong,
    #[error("vertex set is not dominating")]
    NotDominating,
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("exact limit exceeded: {what} needs at most {limit}, got {actual}")]
    ExactLimit {
        what: &'static str,
        limit: usize,
        actual: usize,
    },
    #[error("budget exceeded: {edges} edges against a budget of {budget}; try a smaller graph")]
    Budget { edges: usize, budget: usize },
    #[error("invariant breach: {message}\n{trace}")]
    InvariantBreach { message: String, trace: String },
    #[error("parse error on line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
}

impl Error {
    pub(crate) fn breach(message: impl Into<String>) -> Self {
        Error::InvariantBreach {
            message: message.into(),
            trace: String::new(),
        }
    }

    pub(crate) fn breach_with(message: impl Into<String>, trace: impl Into<String>) -> Self {
        Error::InvariantBreach {
            message: message.into(),
            trace: trace.into(),
        }
    }

    pub(crate) fn precondition(message: impl Into<String>) -> Self {
        Error::Precondition(message.into())
    }

    /// True for errors caused by the shape of the input graph rather than by
    /// a failure of the construction.
    pub fn is_precondition(&self) -> bool {
        matches!(
            self,
            Error::NotConnected
                | Error::NotBridgeless(_)
                | Error::Precondition(_)
                | Error::NotDominating
                | Error::SelfLoop(_)
                | Error::UnknownVertex(_)
        )
    }
}
