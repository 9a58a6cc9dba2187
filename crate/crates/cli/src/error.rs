use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error(transparent)]
    Core(#[from] gkdv_core::Error),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        source: std::io::Error,
    },

    #[error("config {path}: {message}")]
    Config { path: PathBuf, message: String },

    #[error("invalid input: {0}")]
    Input(String),

    #[error("max residual {value:e} exceeds threshold {threshold:e}")]
    ThresholdExceeded { value: f64, threshold: f64 },

    #[error("{failed} q-identity check(s) failed")]
    IdentityFailure { failed: usize },
}

impl CliError {
    /// 1 numerical failure, 2 invalid input, 3 instability.
    pub fn exit_code(&self) -> u8 {
        use gkdv_core::Error as E;
        match self {
            CliError::Core(E::Instability { .. }) => 3,
            CliError::Core(
                E::NoMatchingRoot { .. } | E::ResonantOrder { .. } | E::UndefinedRadius,
            ) => 1,
            CliError::Core(_) => 2,
            CliError::Io { .. } => 1,
            CliError::Config { .. } | CliError::Input(_) => 2,
            CliError::ThresholdExceeded { .. } | CliError::IdentityFailure { .. } => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;

pub fn io_err(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
