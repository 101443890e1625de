//! Crate-wide error taxonomy.

use std::path::PathBuf;

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("corpus directory contains no text documents: {0}")]
    CorpusEmpty(PathBuf),

    #[error("failed to ingest {path}: {reason}")]
    Ingest { path: PathBuf, reason: String },

    #[error("document has no retained tokens: {0}")]
    DocumentEmpty(String),

    #[error("document {0} has a zero token count")]
    DegenerateDocument(usize),

    #[error("non-finite value in {0}")]
    Numeric(String),

    #[error("decomposition did not converge: off-diagonal residual {residual:.3e} after {sweeps} sweeps")]
    Convergence { residual: f64, sweeps: usize },

    #[error("rank {k} out of range 1..={r}")]
    BadRank { k: usize, r: usize },

    #[error("invalid hyperparameter: {0}")]
    BadHyperparam(String),

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("topic {topic} out of range for {k} topics")]
    BadTopic { topic: usize, k: usize },

    #[error("ontology has no concept members")]
    EmptyOntology,

    #[error("model has not been trained")]
    ModelUntrained,

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("parse error at line {line}, column {column}: {message}")]
    Parse {
        line: usize,
        column: usize,
        message: String,
    },

    #[error("unsupported model file version {found} (expected {expected})")]
    Version { found: u32, expected: u32 },

    #[error("query contains no retained terms")]
    QueryEmpty,

    #[error("no path between the requested nodes")]
    NoPath,

    #[error("membership out of range: {0}")]
    BadMembership(String),

    #[error("measure weights must be non-negative")]
    BadWeights,
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }

    pub(crate) fn parse(line: usize, column: usize, message: impl Into<String>) -> Self {
        Error::Parse {
            line,
            column,
            message: message.into(),
        }
    }
}
