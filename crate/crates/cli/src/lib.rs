//! Command-line front end for `parahom`.
//!
//! Exit codes: 0 on success, 1 when a verification check fails, 2 on usage or
//! input errors.

pub mod app;
pub mod document;
pub mod random;

pub use app::run;

#[derive(Debug, thiserror::Error)]
pub enum CliError {
    #[error("{0}")]
    Input(String),
    #[error(transparent)]
    Core(#[from] parahom::Error),
    #[error("{path}: {source}")]
    Io {
        path: String,
        source: std::io::Error,
    },
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core(parahom::Error::Internal(_)) => 1,
            _ => 2,
        }
    }
}
