use thiserror::Error;

/// Errors produced by constructions and verifiers in this crate.
#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is singular or has non-finite entries")]
    SingularMatrix,

    #[error("points must be pairwise distinct: {0}")]
    DegenerateTriple(String),

    #[error("the identity has no well-defined fixed-point set")]
    IdentityFixedPoints,

    #[error("operation requires a parabolic transformation, got {0}")]
    NotParabolic(String),

    #[error("ramification value must be at least 2, got {0}")]
    BadRamification(u64),

    #[error("unsupported signature: {0}")]
    UnsupportedSignature(String),

    #[error("coordinate must have positive imaginary part, got {0}")]
    NonPositiveImaginary(String),

    #[error("expected {expected} coordinates, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid partition: {0}")]
    BadPartition(String),

    #[error("unknown generator name in word: {0}")]
    UnknownGenerator(String),

    #[error("parse error: {0}")]
    Parse(String),
}
