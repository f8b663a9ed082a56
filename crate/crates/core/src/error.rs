use num_bigint::BigInt;
use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument is outside the domain of the operation.
    #[error("invalid parameter: {0}")]
    Parameter(String),

    /// A desk-scale guard was exceeded.
    #[error("{what} exceeds limit: {actual} > {limit}")]
    Resource {
        what: &'static str,
        limit: usize,
        actual: usize,
    },

    #[error("shape mismatch: expected square matrix, got {rows}x{cols}")]
    Shape { rows: usize, cols: usize },

    /// Integer inversion needs `|det| = 1`.
    #[error("matrix is not unimodular: det = {det}")]
    Unimodularity { det: BigInt },

    #[error("singular at the requested point (pole)")]
    Pole,

    #[error("cell attachment rejected: {0}")]
    Attachment(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("{0} is not supported")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn param(msg: impl Into<String>) -> Self {
        Error::Parameter(msg.into())
    }
}
