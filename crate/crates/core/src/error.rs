use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("point {point} appears more than once")]
    RepeatedPoint { point: usize },
    #[error("point {point} is out of range for degree {n}")]
    PointOutOfRange { point: usize, n: usize },
    #[error("degree mismatch: {left} vs {right}")]
    DegreeMismatch { left: usize, right: usize },
    #[error("index {index} is out of range (must be < {bound})")]
    IndexOutOfRange { index: u64, bound: u64 },
    #[error("cannot parse {what}: {detail}")]
    Parse { what: &'static str, detail: String },
    #[error("invalid generating set: {0}")]
    InvalidGenerators(String),
    #[error("{what} of {value} exceeds the configured limit of {limit}")]
    CapExceeded {
        what: &'static str,
        value: u64,
        limit: u64,
    },
    #[error("graph is not strongly connected: {reached} of {order} vertices reachable from the identity")]
    NotStronglyConnected { reached: usize, order: usize },
    #[error("partitions of different sizes: {left} vs {right}")]
    SizeMismatch { left: usize, right: usize },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("matrix is not unitary (max defect {defect:.3e})")]
    NonUnitary { defect: f64 },
    #[error("invalid coin: {0}")]
    InvalidCoin(String),
    #[error("invalid chirality permutation: {0}")]
    InvalidShift(String),
    #[error("backend {backend} does not support {what}")]
    UnsupportedBackend { backend: &'static str, what: String },
    #[error("generating set is not conjugate invariant")]
    NotConjugateInvariant,
    #[error("eigensolver did not converge after {iterations} iterations (residual {residual:.3e})")]
    NoConvergence { iterations: usize, residual: f64 },
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
