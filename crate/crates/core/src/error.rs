use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Malformed input: bad Dynkin string, bad JSON, unknown arrow name, ...
    #[error("parse error: {0}")]
    Parse(String),
    /// The input is well formed but violates a precondition of the operation.
    #[error("precondition violated: {0}")]
    Precondition(String),
    /// A configured iteration or size guard was exhausted.
    #[error("guard exhausted: {0}")]
    Guard(String),
    /// An internal invariant failed; this indicates a bug or an unsupported input.
    #[error("internal invariant failure: {0}")]
    Internal(String),
    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    /// Process exit code used by the command-line driver.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Parse(_) | Error::Io(_) => 2,
            Error::Precondition(_) => 3,
            Error::Guard(_) => 4,
            Error::Internal(_) => 5,
        }
    }
}

impl From<serde_json::Error> for Error {
    fn from(e: serde_json::Error) -> Self {
        Error::Parse(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, Error>;
