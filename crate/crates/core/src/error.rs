use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Malformed or mismatched input (shape, level, field tag, parameter range).
    #[error("input error: {0}")]
    Input(String),
    /// The operation is not defined for this degree or model.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// An argument fails a membership contract (group element, Lie algebra element, ...).
    #[error("contract violated: {0}")]
    Contract(String),
    /// An internal invariant failed; indicates a bug in a construction.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
