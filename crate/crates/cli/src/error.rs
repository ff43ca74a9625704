use thiserror::Error;

/// CLI failure, split by the exit code it maps to.
#[derive(Debug, Error)]
pub enum CliError {
    /// Unreadable or invalid input: exit code 2.
    #[error("{0}")]
    Input(String),
    /// Numeric failure during evaluation: exit code 1.
    #[error("{0}")]
    Numeric(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Input(_) => 2,
            CliError::Numeric(_) => 1,
        }
    }
}

impl From<realign_core::Error> for CliError {
    fn from(e: realign_core::Error) -> Self {
        CliError::Input(e.to_string())
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
