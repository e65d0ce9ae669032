use std::path::PathBuf;

use num_complex::Complex64;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, thiserror::Error)]
pub enum Error {
    #[error("invalid parameters: {0}")]
    InvalidParams(String),

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("line {line}: self-loop on vertex {vertex}")]
    SelfLoop { line: usize, vertex: usize },

    #[error("line {line}: duplicate edge {u}-{v}")]
    DuplicateEdge { line: usize, u: usize, v: usize },

    #[error("{path}: {source}")]
    Io {
        path: PathBuf,
        #[source]
        source: std::io::Error,
    },

    #[error("graph has no edges")]
    EmptyGraph,

    #[error("vertex {0} is isolated")]
    IsolatedVertex(usize),

    #[error("no weight given for edge {0}-{1}")]
    MissingWeight(usize, usize),

    #[error("edge {u}-{v} carries directed weights {forward} and {backward}")]
    DirectedWeight {
        u: usize,
        v: usize,
        forward: f64,
        backward: f64,
    },

    #[error("matrix is not symmetric (|a_ij - a_ji| = {0:e})")]
    Asymmetric(f64),

    #[error("dense materialization of dimension {dim} exceeds limit {limit}")]
    TooLarge { dim: usize, limit: usize },

    #[error("QR iteration stalled on active block {lo}..={hi} after {iterations} iterations")]
    QrNoConvergence { lo: usize, hi: usize, iterations: usize },

    #[error("eigenvector for eigenvalue {0} is not real")]
    ComplexEigenvector(Complex64),

    #[error("eigenpair {index} did not converge (residual {residual:e})")]
    NotConverged { index: usize, residual: f64 },

    #[error("leading eigenvalue {0} is not real and positive")]
    DegenerateSpectrum(Complex64),

    #[error("only {distinct} distinct points for {q} clusters")]
    TooFewDistinctPoints { distinct: usize, q: usize },

    #[error("length mismatch: {0} vs {1}")]
    LengthMismatch(usize, usize),

    #[error("half-edge matching: {0}")]
    Matching(String),
}

impl Error {
    pub(crate) fn io(path: impl Into<PathBuf>, source: std::io::Error) -> Self {
        Error::Io {
            path: path.into(),
            source,
        }
    }
}
