use thiserror::Error;

#[derive(Debug, Error)]
pub enum HacError {
    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },
    #[error("usage error: {0}")]
    Usage(String),
    #[error("capacity exceeded: {0}")]
    Capacity(String),
    /// A reduction decoder could not interpret the merge sequence. This
    /// indicates a bug in an instance builder, not bad user input.
    #[error("decode failure: {0}")]
    Decode(String),
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = HacError> = std::result::Result<T, E>;

pub(crate) fn usage<T>(msg: impl Into<String>) -> Result<T> {
    Err(HacError::Usage(msg.into()))
}
