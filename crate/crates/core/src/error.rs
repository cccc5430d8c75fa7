use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("variable `{0}` is not assigned a value")]
    MissingVariable(String),
    #[error("division by the zero polynomial")]
    ZeroDenominator,
    #[error("invalid grid: {0}")]
    InvalidGrid(String),
    #[error("malformed polynomial JSON: {0}")]
    Json(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidParameter(msg.into())
}
