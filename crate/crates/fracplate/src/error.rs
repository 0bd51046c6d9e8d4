use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    Argument(String),
    #[error("outside domain: {0}")]
    Domain(String),
    #[error("unsupported: {0}")]
    Unsupported(String),
    #[error("quadrature did not reach tolerance: {0}")]
    Quadrature(String),
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("factorization failed: {0}")]
    Factorization(String),
    #[error("eigensolver: {0}")]
    Eigen(String),
    #[error("missing context: {0}")]
    Context(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn arg<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Argument(msg.into()))
}
