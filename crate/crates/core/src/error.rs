//! Error types shared across the crate.

use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum FsppError {
    #[error("invalid granularity: {0}")]
    InvalidGranularity(String),

    #[error("invalid interval: {0}")]
    InvalidInterval(String),

    #[error("cell index out of range: dist {dist}, orient {orient} (grid is {n_dist}x{m_orient})")]
    IndexOutOfRange {
        dist: usize,
        orient: usize,
        n_dist: usize,
        m_orient: usize,
    },

    #[error("degenerate point configuration: {0}")]
    DegeneratePoints(String),

    #[error("direction of the zero vector is undefined")]
    UndefinedDirection,

    #[error("granularity mismatch between operands")]
    GranularityMismatch,

    #[error("invalid trace start: {0}")]
    InvalidStart(String),

    #[error("component is empty")]
    EmptyComponent,

    #[error("missing constraint for triple ({0}, {1}, {2})")]
    MissingConstraint(String, String, String),

    #[error("invalid path: {0}")]
    InvalidPath(String),
}

pub type Result<T> = std::result::Result<T, FsppError>;
