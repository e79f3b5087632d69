use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gzb_core::error::Error),
    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
    #[error("usage: {0}")]
    Usage(String),
    #[error("check failed: {0}")]
    Failed(String),
}

pub type CliResult<T> = Result<T, CliError>;

impl CliError {
    /// 2 for malformed or invalid input, 1 for everything else.
    pub fn exit_code(&self) -> u8 {
        use gzb_core::error::Error as E;
        match self {
            CliError::Usage(_) | CliError::Json(_) => 2,
            CliError::Core(E::Parse { .. } | E::ZeroInput(_) | E::InvalidField(_) | E::NotInvolution(_)) => 2,
            _ => 1,
        }
    }
}
