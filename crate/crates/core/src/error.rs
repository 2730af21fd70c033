use thiserror::Error;

/// Errors produced by tree construction, cut computation, models and the rank oracle.
#[derive(Error, Debug)]
pub enum Error {
    #[error("tree parse error at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },
    #[error("invalid leaf labels: {0}")]
    InvalidLabels(String),
    #[error("a tree needs at least 2 leaves, got {0}")]
    TooFewLeaves(usize),
    #[error("unknown leaf label {0}")]
    UnknownLabel(usize),
    #[error("unknown edge {0}")]
    UnknownEdge(String),
    #[error("invalid edge key {0:?}")]
    InvalidEdgeKey(String),
    #[error("not a permutation of 1..={0}")]
    InvalidPermutation(usize),
    #[error("tree has {edges} edges, brute force is limited to {max}")]
    TreeTooLarge { edges: usize, max: usize },
    #[error("invalid edge function: {0}")]
    InvalidFunction(String),
    #[error("invalid model: {0}")]
    InvalidModel(String),
    #[error("models are not comparable: {0}")]
    ModelMismatch(String),
    #[error("{what} needs {entries} entries, above the dense cap of {cap}")]
    SizeCap {
        what: &'static str,
        entries: u128,
        cap: u128,
    },
    #[error("invalid field prime {0}: must be a prime above 10^6 and below 2^63")]
    InvalidPrime(u64),
    #[error("tensors live over different primes ({0} vs {1})")]
    PrimeMismatch(u64, u64),
    #[error("shape mismatch: {0}")]
    ShapeMismatch(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("exponent k={k} for n={n} leaves lies outside the landmark interval ({lo}, {hi}]")]
    LandmarkMismatch {
        n: usize,
        k: usize,
        lo: u64,
        hi: u64,
    },
    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

/// Coarse classification used for process exit codes.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum ErrorKind {
    Input,
    Assertion,
    ResourceCap,
}

impl Error {
    pub fn kind(&self) -> ErrorKind {
        match self {
            Error::LandmarkMismatch { .. } => ErrorKind::Assertion,
            Error::SizeCap { .. } | Error::TreeTooLarge { .. } => ErrorKind::ResourceCap,
            _ => ErrorKind::Input,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
