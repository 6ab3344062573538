use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("cannot read {path}: {source}")]
    Io { path: PathBuf, source: std::io::Error },
    #[error("{origin}: line {line}, column {column}: {message}")]
    Json { origin: String, line: usize, column: usize, message: String },
    #[error("{origin}: field {field}: {message}")]
    Field { origin: String, field: String, message: String },
    #[error("{origin}: line {line}: {message}")]
    Line { origin: String, line: usize, message: String },
    #[error(transparent)]
    Core(#[from] syncgroups_core::Error),
    #[error("{0}")]
    Usage(String),
}

pub type CliResult<T> = Result<T, CliError>;
