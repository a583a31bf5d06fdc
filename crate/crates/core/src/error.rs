use thiserror::Error;

/// Errors raised by the solver pipeline and its building blocks.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("invalid polygon: {0}")]
    InvalidPolygon(String),
    #[error("projective point with all coordinates zero")]
    ZeroProjectivePoint,
    #[error("invalid combinatorial type: {0}")]
    InvalidType(String),
    #[error("resource cap exceeded: {cap} = {limit}")]
    CapExceeded { cap: &'static str, limit: usize },
    #[error("missing area for face {0}")]
    MissingArea(String),
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("singular jacobian at iterate (smallest/largest singular value {ratio:e})")]
    SingularJacobian { ratio: f64 },
    #[error("no equation selection covers every unknown: {0}")]
    Uncovered(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("inconsistent degeneration data: {0}")]
    Inconsistent(String),
    #[error("elimination failed: {0}")]
    Elimination(String),
    #[error("certificate mismatch: {0}")]
    Certificate(String),
    #[error("sampling failed after {0} attempts")]
    Sampling(usize),
    #[error("parse error in `{field}`: {message}")]
    Parse { field: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
