use thiserror::Error;

/// Errors surfaced by graph construction, matchers, generators and reports.
#[derive(Debug, Error)]
pub enum Error {
    /// A precondition on caller-supplied data failed.
    #[error("invalid input: {0}")]
    Input(String),

    /// A configured size limit was exceeded (caller should lower the radius
    /// or raise the cap).
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// A text artifact could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }
}
