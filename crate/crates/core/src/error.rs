use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("variable count mismatch: {left} vs {right}")]
    VariableCountMismatch { left: usize, right: usize },

    #[error("variable index {index} out of range for n = {n}")]
    VariableIndexOutOfRange { index: usize, n: usize },

    #[error("at least two variables are required, got n = {0}")]
    TooFewVariables(usize),

    #[error("degree {degree} is not allowed here (minimum {min})")]
    InvalidDegree { degree: i32, min: i32 },

    #[error("derivation is not homogeneous")]
    NotHomogeneous,

    #[error("derivation is homogeneous of degree {found}, expected {expected}")]
    DegreeMismatch { expected: i32, found: i32 },

    #[error("coordinate length {found} does not match dimension {expected}")]
    LengthMismatch { expected: usize, found: usize },

    #[error("ambient dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("generator is not a linear vector field (not in degree 0)")]
    NotLinear,

    #[error("vector is not an eigenvector of {operator}")]
    NotEigenvector { operator: String },

    #[error("{module} has {count} independent maximal vectors, expected one")]
    AmbiguousHighestWeight { module: String, count: usize },

    #[error("subspace is not invariant under {generator}")]
    NotInvariant { generator: String },

    #[error("component of degree {degree} exceeds cutoff {cutoff}")]
    CutoffTooSmall { degree: i32, cutoff: i32 },

    #[error("parse error at position {position}: {message}")]
    Parse { position: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
