use thiserror::Error;

use crate::graph::MAX_ORDER;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("graph order {0} outside 1..={MAX_ORDER}")]
    Order(usize),
    #[error("vertex {vertex} out of range for order {order}")]
    VertexOutOfRange { vertex: usize, order: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("vertices must be distinct (got {0} twice)")]
    SameVertex(usize),
    #[error("empty vertex set")]
    EmptySet,
    #[error("invalid permutation: {0}")]
    Permutation(String),
    #[error("invalid partition: {0}")]
    Partition(String),
    #[error("graph6 decode error at byte {offset}: {reason}")]
    Graph6 { offset: usize, reason: String },
    #[error("size limit exceeded: {what} ({got} > {limit})")]
    SizeLimit { what: &'static str, got: usize, limit: usize },
    #[error("infeasible parameters: {0}")]
    Infeasible(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("not a Seidel automorphism: vertices {0} and {1}")]
    NotSeidel(usize, usize),
    #[error("switching condition fails for outside vertex {v} and pair ({x}, {y})")]
    SwitchingCondition { v: usize, x: usize, y: usize },
    #[error("construction produced an invalid graph: {0}")]
    Construction(String),
    #[error("component {component:?} contradicts the classification: {reason}")]
    ContradictsClassification { component: Vec<usize>, reason: String },
    #[error("precondition failed: {0}")]
    Precondition(String),
    #[error("checkpoint error at line {line}: {reason}")]
    Checkpoint { line: usize, reason: String },
    #[error("io: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(e: std::io::Error) -> Self {
        Error::Io(e.to_string())
    }
}
