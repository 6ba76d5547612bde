use std::io;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum GraphError {
    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("{}vertex {vertex} out of range for n = {n}", fmt_line(*.line))]
    EndpointOutOfRange {
        line: Option<usize>,
        vertex: u64,
        n: usize,
    },

    #[error("missing `p sp <n> <m>` problem line")]
    MissingProblemLine,

    #[error("line {0}: arc before problem line")]
    ArcBeforeProblemLine(usize),

    #[error("unsupported MatrixMarket header: {0}")]
    UnsupportedHeader(String),

    #[error("expected {expected} entries, found {found}")]
    EntryCountMismatch { expected: usize, found: usize },

    #[error("graph has {0} vertices, more than 32-bit indices allow")]
    TooManyVertices(usize),

    #[error("invalid generator parameters: {0}")]
    InvalidParameters(String),

    #[error(transparent)]
    Io(#[from] io::Error),
}

fn fmt_line(line: Option<usize>) -> String {
    line.map(|l| format!("line {l}: ")).unwrap_or_default()
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum ForestError {
    #[error("parent({vertex}) = {parent} exceeds the vertex index")]
    ParentAboveVertex { vertex: usize, parent: u32 },

    #[error("parent({vertex}) = {parent} is out of range for n = {n}")]
    ParentOutOfRange {
        vertex: usize,
        parent: u32,
        n: usize,
    },

    #[error("forest is not a union of stars: vertex {vertex} has depth > 1")]
    NotStar { vertex: usize },
}

#[derive(Debug, Error, PartialEq, Eq)]
pub enum LabelingError {
    #[error("labelings differ in length ({0} vs {1})")]
    LengthMismatch(usize, usize),
}
