use std::path::PathBuf;

pub type Result<T, E = CliError> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),

    #[error(transparent)]
    Core(#[from] outerspace_core::Error),

    #[error("{path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },

    #[error("malformed JSON: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn input(msg: impl Into<String>) -> Self {
        CliError::Input(msg.into())
    }

    /// 1 for bad input, 2 when a computation hit a cap or could not be
    /// completed. Acceptance failures are reported through the output
    /// status, not as errors.
    pub fn exit_code(&self) -> i32 {
        use outerspace_core::Error as E;
        match self {
            CliError::Core(
                E::CapExceeded { .. }
                | E::WindowExceeded { .. }
                | E::TailNotAchievable { .. }
                | E::UnequalTerminalDrifts
                | E::StationaryUnresolved { .. },
            ) => 2,
            _ => 1,
        }
    }
}

pub(crate) fn io_error(path: impl Into<PathBuf>) -> impl FnOnce(std::io::Error) -> CliError {
    let path = path.into();
    move |source| CliError::Io { path, source }
}
