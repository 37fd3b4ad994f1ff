use std::path::PathBuf;

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("line {line}: self-loop on node `{label}`")]
    SelfLoop { line: usize, label: String },

    #[error("line {line}: {message}")]
    Malformed { line: usize, message: String },

    #[error("gml: {0}")]
    Gml(String),

    #[error("unknown node id {0}")]
    UnknownNode(usize),

    #[error("unknown node label `{0}`")]
    UnknownLabel(String),

    #[error("edge ({0}, {1}) already exists")]
    DuplicateEdge(usize, usize),

    #[error("edge ({0}, {1}) does not exist")]
    MissingEdge(usize, usize),

    #[error("edge update ({0}, {0}) would create a self-loop")]
    SelfLoopUpdate(usize),

    #[error("node sets differ: {0}")]
    NodeSetMismatch(String),

    #[error("graph has no nodes")]
    EmptyGraph,

    #[error("graph has no edges")]
    NoEdges,

    #[error("metric needs at least two nodes")]
    TooFewNodes,

    #[error("invalid community structure: {0}")]
    InvalidPartition(String),

    #[error("community index {index} out of range (k = {k})")]
    UnknownCommunity { index: usize, k: usize },

    #[error("permanence cache is stale for this graph or partition")]
    StaleCache,

    #[error("eigensolver did not converge after {iterations} iterations (n = {n}, residual {residual:e})")]
    EigenNoConvergence {
        n: usize,
        iterations: usize,
        residual: f64,
    },

    #[error("negative Laplacian eigenvalue {0:e}")]
    NegativeEigenvalue(f64),

    #[error("unknown detector `{0}`")]
    UnknownDetector(String),

    #[error("cannot resolve target: {0}")]
    Target(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

impl Error {
    /// Short machine-readable tag used in CLI error reports.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::SelfLoop { .. } => "self_loop",
            Error::Malformed { .. } => "malformed",
            Error::Gml(_) => "gml",
            Error::UnknownNode(_) | Error::UnknownLabel(_) => "unknown_node",
            Error::DuplicateEdge(..) => "duplicate_edge",
            Error::MissingEdge(..) => "missing_edge",
            Error::SelfLoopUpdate(_) => "self_loop_update",
            Error::NodeSetMismatch(_) => "node_set_mismatch",
            Error::EmptyGraph => "empty_graph",
            Error::NoEdges => "no_edges",
            Error::TooFewNodes => "too_few_nodes",
            Error::InvalidPartition(_) => "invalid_partition",
            Error::UnknownCommunity { .. } => "unknown_community",
            Error::StaleCache => "stale_cache",
            Error::EigenNoConvergence { .. } => "eigen_no_convergence",
            Error::NegativeEigenvalue(_) => "negative_eigenvalue",
            Error::UnknownDetector(_) => "unknown_detector",
            Error::Target(_) => "target",
            Error::Config(_) => "config",
            Error::Io { .. } => "io",
            Error::Json(_) => "json",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
