use std::path::PathBuf;

use thiserror::Error;

/// Errors produced anywhere in the detection and evaluation pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("cannot read {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("cannot decode {path}: {message}")]
    Format { path: PathBuf, message: String },

    #[error("image is {width}x{height}, both sides must be at least 3 pixels")]
    TooSmall { width: usize, height: usize },

    #[error("dimension mismatch: expected {expected:?}, got {actual:?}")]
    DimensionMismatch {
        expected: (usize, usize),
        actual: (usize, usize),
    },

    #[error("unsupported color space `{0}` (expected one of rgb, hsl, luv, cmy)")]
    UnsupportedSpace(String),

    #[error("invalid neighborhood: {0}")]
    InvalidNeighborhood(String),

    #[error("invalid superpixel count {k} for an image of {pixels} pixels")]
    InvalidK { k: usize, pixels: usize },

    #[error("invalid bin count {bins}: must lie in 1..={max}")]
    InvalidBins { bins: usize, max: usize },

    #[error("superpixel {0} has no pixels")]
    EmptyLabel(usize),

    #[error("no items to process: {0}")]
    EmptySet(String),

    #[error("csv output failed: {0}")]
    Csv(#[from] csv::Error),

    #[error("{0}")]
    Invalid(String),
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
