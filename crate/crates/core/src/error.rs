use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input data (CSV rows, formula strings, graph literals).
    #[error("parse error at row {row}: {msg}")]
    Parse { row: usize, msg: String },

    /// A precondition on arguments was violated.
    #[error("{0}")]
    Domain(String),

    /// A numerical procedure failed (non-convergence, overflow,
    /// indefinite Hessian, improper hyperparameters mid-computation).
    #[error("{0}")]
    Numeric(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn numeric(msg: impl Into<String>) -> Self {
        Error::Numeric(msg.into())
    }

    pub(crate) fn parse(row: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            row,
            msg: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
