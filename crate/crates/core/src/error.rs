use thiserror::Error;

/// Errors produced by graph construction, parsing, and the walk machinery.
#[derive(Debug, Error)]
pub enum Error {
    #[error("empty edge list")]
    EmptyEdgeList,

    #[error("line {line}: {message}")]
    EdgeList { line: usize, message: String },

    #[error("self-loop at vertex {vertex}")]
    SelfLoop { vertex: usize },

    #[error("edge ({u}, {v}) out of range for {n} vertices")]
    EdgeOutOfRange { u: usize, v: usize, n: usize },

    #[error("graph is disconnected: vertex {a} and vertex {b} lie in different components")]
    Disconnected { a: String, b: String },

    #[error("graph needs at least {min} vertices, got {n}")]
    TooFewVertices { n: usize, min: usize },

    #[error("vertex {vertex} out of range for {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },

    #[error("invalid family parameters: {0}")]
    InvalidFamily(String),

    #[error("matrix is not symmetric (max asymmetry {max_dev:.3e})")]
    NotSymmetric { max_dev: f64 },

    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("rational eigenvalue filter requires |x| <= 1, got {value}")]
    FilterDomain { value: String },
}

pub type Result<T> = std::result::Result<T, Error>;
