use thiserror::Error;

use crate::graph::{Edge, VertexId};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("edge {0} is not in the graph")]
    InvalidEdge(Edge),
    #[error("vertex {0} is not in the graph")]
    InvalidVertex(VertexId),
    #[error("loop at vertex {0}")]
    Loop(VertexId),
    #[error("invalid wall height {0}")]
    InvalidHeight(usize),
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("wall height {height} does not exceed the packing threshold {threshold}")]
    Threshold { height: usize, threshold: usize },
    #[error("capacity exceeded: {needed} subsets needed, cap is {cap}")]
    Capacity { needed: u128, cap: u64 },
    #[error("graph is planar, no Kuratowski subdivision exists")]
    NotApplicable,
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("invalid cycle: {0}")]
    InvalidCycle(String),
    #[error("inconsistent rotation system: {0}")]
    Inconsistent(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("internal invariant violated: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
