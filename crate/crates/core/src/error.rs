use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("degenerate ray: zero vector has no primitive part")]
    ZeroVector,

    #[error("malformed stacky fan: {0}")]
    Malformed(String),

    #[error("fan validation failed: {0}")]
    Validation(String),

    #[error("fan not complete at y = {0}")]
    NotComplete(String),

    #[error("vector is not in the curve space Ker(beta'_orb)")]
    NotInCurveSpace,

    #[error("parse error: {0}")]
    Parse(String),

    #[error("internal invariant violated: {0}")]
    Invariant(String),
}
