use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("domain error: {0}")]
    Domain(String),
    #[error("invalid contingency table: {0}")]
    InvalidTable(String),
    #[error("invalid hyperparameter: {0}")]
    InvalidHyper(String),
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("invalid imaginary sample: {0}")]
    InvalidImaginary(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("empty input to {0}")]
    EmptyInput(&'static str),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
