use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },

    #[error("vertex {v} out of range (graph has {n} vertices)")]
    OutOfRange { v: usize, n: usize },

    #[error("{u} {v} is not an edge")]
    NotAnEdge { u: usize, v: usize },

    #[error("{u} {v} is already an edge")]
    AlreadyAnEdge { u: usize, v: usize },

    #[error("pair endpoints must differ, got {0} twice")]
    SelfPair(usize),

    #[error("invalid distant-edge set: {0}")]
    BadSet(String),

    #[error("edited graph is outside the backend's class")]
    CertificateFailed,

    #[error("graph is not in the backend's class")]
    NotInClass,

    #[error("{what} too large: {actual} exceeds limit {limit}")]
    TooLarge {
        what: &'static str,
        actual: usize,
        limit: usize,
    },
}
