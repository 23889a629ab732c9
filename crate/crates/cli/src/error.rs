use std::io;
use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },
    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },
    #[error("{0}")]
    Usage(String),
    #[error(transparent)]
    Core(#[from] trussmerge_core::Error),
    #[error("failed to write output: {0}")]
    Output(String),
}

impl CliError {
    pub fn io(path: impl Into<PathBuf>, source: io::Error) -> Self {
        CliError::Io {
            path: path.into(),
            source,
        }
    }

    /// Stable identifier printed next to every diagnostic.
    pub fn code(&self) -> &'static str {
        use trussmerge_core::Error as E;
        match self {
            CliError::Io { .. } => "io",
            CliError::Parse { .. } => "parse",
            CliError::Usage(_) => "usage",
            CliError::Output(_) => "output",
            CliError::Core(e) => match e {
                E::UnknownNode(_) => "unknown_node",
                E::SelfMerge(_) => "self_merge",
                E::MissingEdge(..) => "missing_edge",
                E::InvalidK(_) => "invalid_k",
                E::NotInside(_) => "not_inside",
                E::Disconnected => "disconnected",
                E::TooLarge { .. } => "too_large",
                E::InvalidConfig(_) => "invalid_config",
            },
        }
    }
}

impl From<serde_json::Error> for CliError {
    fn from(e: serde_json::Error) -> Self {
        CliError::Output(e.to_string())
    }
}

impl From<csv::Error> for CliError {
    fn from(e: csv::Error) -> Self {
        CliError::Output(e.to_string())
    }
}
