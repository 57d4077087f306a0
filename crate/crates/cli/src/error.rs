use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum CliError {
    #[error("file not found: {}", .0.display())]
    FileNotFound(PathBuf),

    #[error("{}: row {row}, column {column}: {message}", path.display())]
    Parse {
        path: PathBuf,
        row: usize,
        column: String,
        message: String,
    },

    #[error("{0}: no data rows")]
    EmptySeries(String),

    #[error("unknown column {name:?} (header: {header})")]
    MissingColumn { name: String, header: String },

    #[error("unknown builtin dataset {0:?} (available: @czech2011)")]
    UnknownDataset(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{context}: {source}")]
    Core {
        context: String,
        #[source]
        source: ftrisk_core::Error,
    },

    #[error("i/o error on {}: {source}", path.display())]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("could not serialize report: {0}")]
    Json(#[from] serde_json::Error),
}

impl CliError {
    pub fn core(context: impl Into<String>, source: ftrisk_core::Error) -> Self {
        CliError::Core {
            context: context.into(),
            source,
        }
    }

    /// 1 for bad input, 2 for numerical failures.
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Core { source, .. } if !source.is_input_error() => 2,
            CliError::Json(_) => 2,
            _ => 1,
        }
    }
}

pub type Result<T> = std::result::Result<T, CliError>;
