use thiserror::Error;

/// Errors raised by the algebraic layers of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum AlgebraError {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("axis {axis} out of range for ambient dimension {n}")]
    AxisOutOfRange { axis: usize, n: usize },

    #[error("form degree {k} not allowed here: {reason}")]
    FormDegree { k: usize, reason: &'static str },

    #[error("unsupported: {0}")]
    Unsupported(String),

    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),

    #[error("value {0} is not in the target space")]
    NotInSubspace(String),

    #[error("matrix is singular")]
    Singular,

    #[error("invalid diagram: {0}")]
    InvalidDiagram(String),

    #[error("invalid complex: {0}")]
    InvalidComplex(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("unknown name `{0}`")]
    UnknownName(String),
}

/// Errors raised while decoding the JSON interchange formats.
#[derive(Debug, Error)]
pub enum FormatError {
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),

    #[error("invalid rational `{0}`")]
    Rational(String),

    #[error("invalid field `{field}`: {reason}")]
    Field { field: &'static str, reason: String },

    #[error(transparent)]
    Algebra(#[from] AlgebraError),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
