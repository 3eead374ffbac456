use thiserror::Error;

use crate::graph::Violation;

/// Errors raised while reading an MG1 document.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {kind}")]
pub struct ParseError {
    pub line: usize,
    pub kind: ParseErrorKind,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ParseErrorKind {
    #[error("syntax error: {0}")]
    Syntax(String),
    #[error("vertices {0} and {1} are joined by more than one link")]
    DuplicatePair(usize, usize),
    #[error("out of range: {0}")]
    OutOfRange(String),
    #[error("loop at vertex {0}")]
    Loop(usize),
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error(transparent)]
    Parse(#[from] ParseError),
    #[error("invalid graph: {}", .0.iter().map(|v| v.to_string()).collect::<Vec<_>>().join("; "))]
    InvalidGraph(Vec<Violation>),
    #[error("signature mismatch: expected ({expected_m},{expected_n}), found ({found_m},{found_n})")]
    SignatureMismatch {
        expected_m: usize,
        expected_n: usize,
        found_m: usize,
        found_n: usize,
    },
    #[error("unknown target `{0}`")]
    UnknownTarget(String),
    #[error("unknown construction `{0}`")]
    UnknownConstruction(String),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("vertex {vertex} out of range for a graph on {num_vertices} vertices")]
    VertexOutOfRange { vertex: usize, num_vertices: usize },
    #[error("empty pattern")]
    EmptyPattern,
    #[error("empty color set")]
    EmptySet,
    #[error("graph has {size} vertices, limit is {limit}")]
    SizeLimit { size: usize, limit: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
