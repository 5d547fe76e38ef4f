use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("point does not belong to the carrier space: {0}")]
    CarrierMismatch(String),

    #[error("non-finite coordinate in point")]
    NonFinite,

    #[error("unknown metric `{0}`")]
    UnknownMetric(String),

    #[error("unknown map `{0}`")]
    UnknownMap(String),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("arity mismatch: schema {schema} expects a {expected} metric")]
    ArityMismatch { schema: &'static str, expected: &'static str },

    #[error("empty point set")]
    EmptySet,

    #[error("degenerate sample: {0}")]
    Degenerate(String),

    #[error("certificate error: {0}")]
    Certificate(String),

    #[error("singular matrix: pivot {pivot:e} below threshold at column {column}")]
    Singular { column: usize, pivot: f64 },

    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter { name, reason: reason.into() }
}
