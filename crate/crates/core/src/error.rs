use std::path::PathBuf;

/// Errors reported by the library.
#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("non-finite coordinate")]
    NonFinite,
    #[error("empty point set")]
    EmptySet,
    #[error("degenerate input: {0}")]
    Degenerate(String),
    #[error("depth is ambiguous: point {0} has a duplicate")]
    Duplicate(usize),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("index {index} out of range for {len} points")]
    IndexOutOfRange { index: usize, len: usize },
    #[error("bad polygon spec {spec:?}: {reason}")]
    PolygonSpec { spec: String, reason: String },
    #[error("line {line}: {reason}")]
    Parse { line: usize, reason: String },
    #[error("input too large: {0}")]
    TooLarge(String),
    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },
    #[error(transparent)]
    Csv(#[from] csv::Error),
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
