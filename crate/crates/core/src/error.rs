use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    /// An input outside the domain of the operation (non-coprime pair,
    /// even Jacobi denominator, empty sequence, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// A 64-bit result or intermediate would not fit.
    #[error("integer overflow in {0}")]
    Overflow(&'static str),

    /// Sample grid incompatible with the requested shifts.
    #[error("grid mismatch: {0}")]
    Grid(String),

    /// Two envelopes or sequences with different shapes were combined.
    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
