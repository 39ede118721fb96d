use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("rank mismatch: expected {expected}, got {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("unknown root system `{0}`")]
    UnknownRootSystem(String),
    #[error("unsupported for this root system: {0}")]
    Unsupported(String),
    #[error("weight is not dominant: {0:?}")]
    NotDominant(Vec<i64>),
    #[error("parity precondition violated: {0}")]
    Parity(String),
    #[error("index out of range: {0}")]
    OutOfRange(String),
    #[error("precondition violated: {0}")]
    Precondition(String),
    #[error("not a root: {0:?}")]
    NotARoot(Vec<i64>),
    #[error("relation hypothesis fails: {0}")]
    HypothesisFails(String),
    #[error("parse error: {0}")]
    Parse(String),
    #[error("graded component too large ({dim} > {cap})")]
    TooLarge { dim: usize, cap: usize },
}

pub type Result<T> = std::result::Result<T, Error>;
