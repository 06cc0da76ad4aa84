use qtst::QtstError;
use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("config error: {0}")]
    Config(String),
    #[error("domain error: {0}")]
    Domain(String),
    #[error("fit failed: {0}")]
    Fit(String),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Config(_) => 2,
            CliError::Domain(_) => 3,
            CliError::Fit(_) => 4,
        }
    }

    pub fn config(msg: impl Into<String>) -> Self {
        CliError::Config(msg.into())
    }

    pub fn io(path: &std::path::Path, e: std::io::Error) -> Self {
        CliError::Config(format!("{}: {e}", path.display()))
    }
}

impl From<QtstError> for CliError {
    fn from(e: QtstError) -> Self {
        match e {
            QtstError::Parse(_)
            | QtstError::InvalidDataset(_)
            | QtstError::UnknownRow(_)
            | QtstError::UnsupportedPair(_)
            | QtstError::IncompatibleUnits { .. } => CliError::Config(e.to_string()),
            QtstError::NoConvergentStart | QtstError::AllPointsBelowCrossover => CliError::Fit(e.to_string()),
            _ => CliError::Domain(e.to_string()),
        }
    }
}

pub type CliResult<T> = Result<T, CliError>;
