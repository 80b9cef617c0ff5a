use ccnet_core::Error as CoreError;

/// Everything that can stop a command, with its exit code.
#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("{path}: {message}")]
    Document { path: String, message: String },
    #[error("{0}")]
    Core(#[from] CoreError),
    #[error("verification failed: {0}")]
    Check(String),
    #[error("{0}")]
    Io(#[from] std::io::Error),
}

impl CliError {
    /// 0 success, 1 validation, 2 guard refusal, 3 internal invariant violation.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(CoreError::Guard(_)) => 2,
            CliError::Core(CoreError::Internal(_)) | CliError::Check(_) => 3,
            _ => 1,
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
