use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("empty input: {0}")]
    EmptyInput(&'static str),

    #[error("non-finite coordinate at index {index}")]
    NonFinite { index: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("simplex budget of {budget} exceeded")]
    BudgetExceeded { budget: usize },

    #[error("invalid simplex: {0}")]
    InvalidSimplex(String),

    #[error("chain dimension mismatch: {left} vs {right}")]
    ChainDimension { left: usize, right: usize },

    #[error("boundary of a 0-chain is undefined here")]
    ZeroChainBoundary,

    #[error("invalid gluing: {0}")]
    InvalidGlue(String),

    #[error("complex is not face-closed: missing face {0}")]
    NotFaceClosed(String),

    #[error("invalid filtration: {0}")]
    InvalidFiltration(String),

    #[error("parse error at row {row}, column {column}: {message}")]
    Parse {
        row: usize,
        column: usize,
        message: String,
    },

    #[error("i/o error: {0}")]
    Io(String),
}

impl From<std::io::Error> for Error {
    fn from(err: std::io::Error) -> Self {
        Error::Io(err.to_string())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
