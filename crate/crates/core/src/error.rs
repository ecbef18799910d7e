use thiserror::Error;

use crate::space::ClReport;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("vertex count {0} outside the supported range 1..=24")]
    VertexCount(usize),
    #[error("vertex {index} out of range for a graph on {n} vertices")]
    VertexOutOfRange { index: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("empty vertex set")]
    EmptyVertexSet,
    #[error("exhaustive perfectness check supports n <= {limit}, got n = {n}")]
    PerfectnessLimit { n: usize, limit: usize },
    #[error("graph is not the graph of a CL-space")]
    NotClSpace(Box<ClReport>),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("degree mismatch: {0} vs {1}")]
    DegreeMismatch(usize, usize),
    #[error("degree must be at least {min}, got {got}")]
    DegreeTooSmall { min: usize, got: usize },
    #[error("{0}")]
    InvalidInput(String),
    #[error("operation requires a complex-mode space")]
    RequiresComplexMode,
    #[error("operation requires a real-mode space")]
    RequiresRealMode,
    #[error("exact arithmetic requires rational coordinate moduli: {0}")]
    IrrationalModulus(String),
    #[error("vector does not have norm one: norm = {0}")]
    NormNotOne(String),
    #[error("affine slice {0} does not meet the unit ball")]
    InfeasibleSlice(String),
    #[error("perturbation direction undefined: (f - h) vanishes at the chosen basis point")]
    DirectionUndefined,
    #[error("malformed JSON input: {0}")]
    Json(String),
    #[error("internal invariant violated: {0}")]
    Internal(String),
}
