use thiserror::Error;

use crate::graph::Edge;

#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} vertices requested; at most {max} are supported", max = crate::graph::MAX_VERTICES)]
    TooManyVertices(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("loop at vertex {0}")]
    Loop(usize),
    #[error("vertex counts differ: {0} vs {1}")]
    VertexCountMismatch(usize, usize),
    #[error("edge {0} is not an edge of the host graph")]
    NotInHost(Edge),
    #[error("edge {0} joins two vertices on the same side")]
    SameSideEdge(Edge),
    #[error("invalid pattern: {0}")]
    InvalidPattern(String),
    #[error("invalid parameters: {0}")]
    InvalidParameters(String),
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("{0} is not prime")]
    NotPrime(u64),
    #[error("modulus {p} must exceed the vertex count {n}")]
    PrimeTooSmall { p: u64, n: usize },
    #[error("vector family is not in general position: {0}")]
    GeneralPosition(String),
    #[error("budget of {budget} verification calls exhausted (last completed edge count: {last_completed:?})")]
    BudgetExceeded {
        budget: u64,
        last_completed: Option<usize>,
    },
    #[error(transparent)]
    Io(#[from] std::io::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
