use std::fmt;

/// Errors surfaced by the binary, partitioned by exit code: configuration
/// problems exit 2, a failed-trial quota exits 3, everything else exits 1.
#[derive(Debug)]
pub enum AppError {
    Config(String),
    Failures(String),
    Other(String),
}

impl AppError {
    pub fn exit_code(&self) -> u8 {
        match self {
            AppError::Config(_) => 2,
            AppError::Failures(_) => 3,
            AppError::Other(_) => 1,
        }
    }
}

impl fmt::Display for AppError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            AppError::Config(msg) => write!(f, "config error: {msg}"),
            AppError::Failures(msg) => write!(f, "{msg}"),
            AppError::Other(msg) => write!(f, "{msg}"),
        }
    }
}

impl std::error::Error for AppError {}

impl From<std::io::Error> for AppError {
    fn from(e: std::io::Error) -> Self {
        AppError::Other(format!("io error: {e}"))
    }
}

/// Maps a library error raised while staging an experiment (before any trial
/// runs) onto the config exit path, since at that point the inputs are wrong.
pub fn setup_err(e: tomolab::error::Error) -> AppError {
    AppError::Config(e.to_string())
}
