use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),
    #[error("verification failed: {0}")]
    Verification(String),
    #[error("numerical contract violated: {0}")]
    Contract(String),
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::Verification(_) => 1,
            CliError::Usage(_) => 2,
            CliError::Contract(_) => 3,
        }
    }
}

impl From<circulant::Error> for CliError {
    fn from(e: circulant::Error) -> Self {
        match e {
            circulant::Error::Contract(msg) => CliError::Contract(msg),
            other => CliError::Usage(other.to_string()),
        }
    }
}
