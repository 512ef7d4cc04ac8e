use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("dimension mismatch: {0}")]
    DimensionMismatch(String),
    #[error("invalid partition: {0}")]
    InvalidPartition(String),
    #[error("the zero element has no {0}")]
    ZeroElement(&'static str),
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error("not a numerical polynomial: {0}")]
    NotNumerical(String),
    #[error("basis is not certified: {0}")]
    Uncertified(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("threshold not found after {0} enlargements")]
    ThresholdNotFound(usize),
    #[error("not converged: {0}")]
    NotConverged(String),
    #[error("rewriting budget exceeded: {0}")]
    BudgetExceeded(String),
    #[error("{location}: {message}")]
    Parse { location: String, message: String },
}

pub type Result<T> = std::result::Result<T, Error>;
