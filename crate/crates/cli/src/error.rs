use std::path::PathBuf;

use nonbacktracking::Error as CoreError;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("{path}: {source}")]
    Csv {
        path: PathBuf,
        #[source]
        source: csv::Error,
    },

    #[error("{0}")]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Core(#[from] CoreError),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    pub fn csv(path: impl Into<PathBuf>, source: csv::Error) -> Self {
        CliError::Csv {
            path: path.into(),
            source,
        }
    }

    /// `2` for numerical failures, `1` for everything the caller can fix.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(e) if is_numerical(e) => 2,
            _ => 1,
        }
    }
}

fn is_numerical(e: &CoreError) -> bool {
    matches!(
        e,
        CoreError::QrNoConvergence { .. }
            | CoreError::NotConverged { .. }
            | CoreError::DegenerateSpectrum(_)
            | CoreError::ComplexEigenvector(_)
            | CoreError::TooFewDistinctPoints { .. }
            | CoreError::Asymmetric(_)
            | CoreError::Matching(_)
    )
}
