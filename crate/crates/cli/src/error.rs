use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: field `{field}`: {message}", path.display())]
    Schema { path: PathBuf, field: String, message: String },
    /// A file that parsed but was rejected by the library, e.g. `InvalidTable`.
    #[error("{}: {source}", path.display())]
    Invalid { path: PathBuf, source: weightk_core::Error },
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: std::io::Error },
    #[error("unknown suite `{0}` (expected khom, k0, thm234, measures or all)")]
    UnknownSuite(String),
    #[error("invalid configuration: {0}")]
    Config(String),
    #[error(transparent)]
    Core(#[from] weightk_core::Error),
}

impl CliError {
    pub(crate) fn schema(path: impl Into<PathBuf>, err: &serde_json::Error) -> Self {
        let msg = err.to_string();
        let field = msg
            .split_once("field `")
            .and_then(|(_, rest)| rest.split_once('`'))
            .map(|(f, _)| f.to_string())
            .unwrap_or_else(|| format!("line {} column {}", err.line(), err.column()));
        CliError::Schema { path: path.into(), field, message: msg }
    }
}

pub type Result<T, E = CliError> = std::result::Result<T, E>;
