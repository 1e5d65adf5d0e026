use thiserror::Error;

/// Errors produced by this crate.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("malformed header (line {line}): {reason}")]
    MalformedHeader { line: usize, reason: String },

    #[error("parse error (line {line}): {reason}")]
    Parse { line: usize, reason: String },

    #[error("vertex index out of range (line {line}): {index} not in 1..={num_vertices}")]
    VertexOutOfRange {
        line: usize,
        index: i64,
        num_vertices: usize,
    },

    #[error("vertex id {vertex} out of range for {num_vertices} vertices")]
    InvalidVertex { vertex: usize, num_vertices: usize },

    #[error("non-positive edge weight {weight} for hyperedge {edge}")]
    InvalidEdgeWeight { edge: usize, weight: f64 },

    #[error("invalid vertex weight {weight} for vertex {vertex}")]
    InvalidVertexWeight { vertex: usize, weight: f64 },

    #[error("unexpected end of input: expected {expected}")]
    UnexpectedEof { expected: String },

    #[error("line count mismatch: expected {expected}, found {found}")]
    LineCountMismatch { expected: usize, found: usize },

    #[error("invalid cluster assignment: {0}")]
    InvalidAssignment(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("embedding pool is empty")]
    EmptyPool,

    #[error("invalid vertex set: {0}")]
    InvalidVertexSet(String),

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

impl Error {
    /// Short stable identifier used in machine-readable error lines.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::MalformedHeader { .. } => "malformed-header",
            Error::Parse { .. } => "parse",
            Error::VertexOutOfRange { .. } | Error::InvalidVertex { .. } => "vertex-out-of-range",
            Error::InvalidEdgeWeight { .. } => "invalid-edge-weight",
            Error::InvalidVertexWeight { .. } => "invalid-vertex-weight",
            Error::UnexpectedEof { .. } => "unexpected-eof",
            Error::LineCountMismatch { .. } => "line-count-mismatch",
            Error::InvalidAssignment(_) => "invalid-assignment",
            Error::DimensionMismatch { .. } => "dimension-mismatch",
            Error::EmptyPool => "empty-pool",
            Error::InvalidVertexSet(_) => "invalid-vertex-set",
            Error::InvalidConfig(_) => "invalid-config",
            Error::Io(_) => "io",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
