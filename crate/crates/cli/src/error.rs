use thiserror::Error;

/// A failed command. The variant decides the exit code.
#[derive(Debug, Error)]
pub enum CliError {
    /// Malformed input: exit code 2.
    #[error("parse error: {0}")]
    Parse(String),

    #[error("{path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },

    /// A semantic failure (failed check, engine error): exit code 1.
    #[error("{0}")]
    Failed(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Parse(_) | CliError::Io { .. } => 2,
            CliError::Failed(_) => 1,
        }
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        CliError::Parse(msg.into())
    }
}

impl From<polybasis_core::Error> for CliError {
    fn from(e: polybasis_core::Error) -> Self {
        CliError::Failed(e.to_string())
    }
}

pub type CliResult<T> = Result<T, CliError>;
