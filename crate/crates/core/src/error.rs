use std::path::PathBuf;

use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("graph must have at least one node")]
    EmptyGraph,

    #[error("edge ({i}, {j}) references a node outside 0..{n}")]
    NodeOutOfRange { i: usize, j: usize, n: usize },

    #[error("self-loop on node {0}")]
    SelfLoop(usize),

    #[error("edge ({i}, {j}) has non-positive or non-finite weight {w}")]
    InvalidWeight { i: usize, j: usize, w: f64 },

    #[error("duplicate edge ({i}, {j})")]
    DuplicateEdge { i: usize, j: usize },

    #[error("length mismatch: expected {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("node index {index} out of range for {n} nodes")]
    IndexOutOfRange { index: usize, n: usize },

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("node {0} has no neighbors; its scale factor is undefined")]
    IsolatedNode(usize),

    #[error("dense oracle limited to {cap} nodes, graph has {n}")]
    OracleCapExceeded { n: usize, cap: usize },

    #[error("set-cover universe of {size} elements exceeds the exhaustive-search cap of {cap}")]
    SetCoverTooLarge { size: usize, cap: usize },

    #[error("sample set is empty")]
    EmptySampleSet,

    #[error("duplicate sample node {0}")]
    DuplicateSample(usize),

    #[error("connected component {component} (containing node {node}) has no sampled node; the system matrix is singular")]
    UnsampledComponent { component: usize, node: usize },

    #[error("conjugate gradient did not converge in {iterations} iterations (relative residual {residual:e})")]
    NotConverged { iterations: usize, residual: f64 },

    #[error("matrix factorization failed: {0}")]
    Factorization(String),

    #[error("{path}:{line}: {message}")]
    Parse {
        path: PathBuf,
        line: usize,
        message: String,
    },

    #[error("{path}:{line}: {source}")]
    InvalidGraphFile {
        path: PathBuf,
        line: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("trial {trial}: {source}")]
    Trial {
        trial: usize,
        #[source]
        source: Box<Error>,
    },

    #[error("i/o error on {path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Csv(#[from] csv::Error),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
