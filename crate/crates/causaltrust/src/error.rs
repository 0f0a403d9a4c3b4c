use std::io;
use std::path::PathBuf;
use std::process::ExitCode;

/// Process exit statuses of the CLI.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
#[repr(u8)]
pub enum ExitStatus {
    Success = 0,
    Failure = 1,
    Usage = 2,
    Io = 3,
    NoScorableCausals = 4,
    InvalidData = 5,
}

impl From<ExitStatus> for ExitCode {
    fn from(status: ExitStatus) -> Self {
        ExitCode::from(status as u8)
    }
}

#[derive(Debug, thiserror::Error)]
pub enum AppError {
    #[error("{0}")]
    Usage(String),
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("no scorable causals in source `{0}`: every relation is unknown to the graph or lacks gained knowledge")]
    NoScorableCausals(String),
    #[error("{context}: {message}")]
    InvalidData { context: String, message: String },
    #[error(transparent)]
    Core(#[from] causaltrust_core::Error),
}

impl AppError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        Self::Io {
            path: path.into(),
            source,
        }
    }

    pub fn data(context: impl Into<String>, message: impl ToString) -> Self {
        Self::InvalidData {
            context: context.into(),
            message: message.to_string(),
        }
    }

    pub fn exit_status(&self) -> ExitStatus {
        match self {
            Self::Usage(_) => ExitStatus::Usage,
            Self::Io { .. } => ExitStatus::Io,
            Self::NoScorableCausals(_) => ExitStatus::NoScorableCausals,
            Self::InvalidData { .. } => ExitStatus::InvalidData,
            Self::Core(causaltrust_core::Error::InvalidHyperparameter { .. }) => ExitStatus::Usage,
            Self::Core(_) => ExitStatus::InvalidData,
        }
    }
}
