use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("duplicate points at indices {0} and {1}")]
    Duplicate(usize, usize),

    #[error("dimension mismatch: expected {expected}, found {found} at index {index}")]
    DimensionMismatch {
        expected: usize,
        found: usize,
        index: usize,
    },

    #[error("non-finite coordinate in point {0}")]
    NonFinite(usize),

    #[error("{n} points exceeds the exhaustive search limit of {limit}")]
    TooLarge { n: usize, limit: usize },

    #[error("no pair of disjoint nearest-neighbour disks exists")]
    NoDisjointPair,

    /// A planar prefix of at least 12 points without a disjoint pair. This
    /// cannot happen for exact inputs, so it signals a bug or a tolerance
    /// artifact; the offending points are kept for the dump.
    #[error("no disjoint disk pair among the first {} points", points.len())]
    Counterexample { points: Vec<Vec<f64>> },

    #[error("degenerate input: {0}")]
    Degenerate(String),

    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Csv(#[from] csv::Error),
}
