use thiserror::Error;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("vertex {vertex} out of range for a graph on {p} vertices")]
    VertexOutOfRange { vertex: usize, p: usize },
    #[error("self-loop at vertex {0} is not allowed")]
    SelfLoop(usize),
    #[error("edge ({0}, {1}) is not present")]
    MissingEdge(usize, usize),
    #[error("cannot delete the last remaining vertex")]
    LastVertex,
    #[error("graph must have at least one vertex")]
    EmptyGraph,
    #[error("graphs are limited to {max} vertices, got {p}")]
    TooManyVertices { p: usize, max: usize },
    #[error("glue set is not a clique in {0}")]
    GlueNotClique(&'static str),
    #[error("invalid glue: {0}")]
    InvalidGlue(String),
    #[error("invalid generator parameter: {0}")]
    InvalidParameter(String),
    #[error("parse error on line {line}: {msg}")]
    Parse { line: usize, msg: String },
    #[error("graph has {p} vertices, exact treewidth is limited to {limit}")]
    TooLargeForTreewidth { p: usize, limit: usize },
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },
    #[error("matrix has non-finite entries")]
    NonFinite,
    #[error("matrix is zero")]
    ZeroMatrix,
    #[error("matrix is not positive semidefinite (smallest eigenvalue {0:e})")]
    NotPsd(f64),
    #[error("expected rank {expected}, numerical rank is {got}")]
    RankMismatch { expected: usize, got: usize },
    #[error("matrix is not in general position")]
    NotGeneralPosition,
    #[error("diagonal entry {index} is not strictly positive ({value:e})")]
    NonPositiveDiagonal { index: usize, value: f64 },
    #[error("index set must be a proper nonempty subset")]
    ImproperIndexSet,
    #[error("rank cannot be raised: d = p = {0}")]
    FullRank(usize),
    #[error("random sampling failed after {0} attempts")]
    RetriesExhausted(usize),
    #[error("expected nullity {expected}, found {got}")]
    NullityMismatch { expected: usize, got: usize },
    #[error("graph is not chordal")]
    NotChordal,
    #[error("clique submatrix on {0:?} is not positive definite")]
    CliqueNotPd(Vec<usize>),
    #[error("graph is {actual}-connected, not {requested}-connected")]
    NotConnectedEnough { requested: usize, actual: usize },
    #[error("orthonormal representation search failed after {0} restarts")]
    CertificateSearchFailed(usize),
    #[error("invalid configuration: {0}")]
    InvalidConfig(String),
}

pub type Result<T> = std::result::Result<T, Error>;
