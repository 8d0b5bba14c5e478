use std::path::Path;

use thiserror::Error;

/// Frontend errors, each mapped to a process exit code: data problems
/// (unreadable or malformed inputs) exit 1, configuration and analysis
/// problems exit 2, internal numeric failures exit 3.
#[derive(Debug, Error)]
pub enum CliError {
    #[error("{path}:{line}:{col}: {message}")]
    Parse {
        path: String,
        /// 1-based record line.
        line: usize,
        /// 1-based field index within the record.
        col: usize,
        message: String,
    },
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
    #[error("{0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] cdrank_core::Error),
}

impl CliError {
    pub fn io(path: &Path, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.display().to_string(),
            source,
        }
    }

    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Parse { .. } | CliError::Io { .. } => 1,
            CliError::Config(_) => 2,
            CliError::Core(e) => match e {
                cdrank_core::Error::Data(_) => 1,
                cdrank_core::Error::Analysis(_) => 2,
                cdrank_core::Error::Domain { .. } | cdrank_core::Error::Convergence { .. } => 3,
            },
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
