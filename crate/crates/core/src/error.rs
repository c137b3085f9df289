use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("unsupported case: {0}")]
    UnsupportedCase(String),
    #[error("value {value} is not within {tol:e} of an integer (residual {residual:e})")]
    Residual { value: f64, residual: f64, tol: f64 },
    #[error("inconsistent fusion data: {0}")]
    Inconsistency(String),
    #[error("check failed: {0}")]
    CheckFailure(String),
    #[error("construction failed: {0}")]
    ConstructionFailure(String),
}

pub type Result<T> = std::result::Result<T, Error>;
