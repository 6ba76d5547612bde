use std::io;
use std::path::PathBuf;

use cc_core::{GraphError, LabelingError};
use thiserror::Error;

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFICATION_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_IO: i32 = 3;

#[derive(Debug, Error)]
pub enum BenchError {
    #[error("{0}")]
    Usage(String),

    #[error("{path}: {source}")]
    Graph {
        path: PathBuf,
        #[source]
        source: GraphError,
    },

    #[error(transparent)]
    Generator(GraphError),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: io::Error,
    },

    #[error("{path}: line {line}: {message}")]
    LabelsFile {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("labels do not match the graph: {0}")]
    LabelCount(#[from] LabelingError),

    #[error("could not start worker pool: {0}")]
    Pool(#[from] cc_core::pool::ThreadPoolBuildError),
}

impl BenchError {
    pub fn exit_code(&self) -> i32 {
        match self {
            BenchError::Usage(_) => EXIT_USAGE,
            _ => EXIT_IO,
        }
    }

    pub(crate) fn io(path: impl Into<PathBuf>) -> impl FnOnce(io::Error) -> BenchError {
        let path = path.into();
        move |source| BenchError::Io { path, source }
    }
}

pub type Result<T, E = BenchError> = std::result::Result<T, E>;
