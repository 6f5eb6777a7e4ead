use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Core(#[from] ward_core::Error),
    #[error("certification failed: {0}")]
    Certification(String),
    #[error("i/o error on {path}: {source}")]
    Io {
        path: String,
        #[source]
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> u8 {
        match self {
            CliError::InvalidInput(_) => 2,
            CliError::Core(ward_core::Error::NotPeriodicDirection { .. }) => 3,
            CliError::Core(_) => 2,
            CliError::Certification(_) => 3,
            CliError::Io { .. } => 4,
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::InvalidInput(format!("malformed JSON: {e}"))
    }
}

pub type CliResult<T> = std::result::Result<T, CliError>;
