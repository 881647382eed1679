use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("n = {n} exceeds the configured cap of {cap}")]
    CapExceeded { n: u32, cap: u32 },

    #[error("matrix dimension {dim} exceeds the oracle cap of {cap}")]
    OracleCapExceeded { dim: usize, cap: usize },

    #[error("index {index} is outside [1, {max}]")]
    IndexOutOfRange { index: u64, max: u64 },

    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    #[error("dimension {0} is not a power of two")]
    NotPowerOfTwo(usize),

    #[error("element {element} is outside [1, {n}]")]
    ElementOutOfRange { element: u64, n: u32 },

    #[error("ambient sizes differ: {0} vs {1}")]
    AmbientMismatch(u32, u32),

    #[error("set {0} does not contain 1")]
    MissingOne(String),

    #[error("table is not a permutation of the subsets of [{0}]")]
    NotAPermutation(u32),

    #[error("parse error: {0}")]
    Parse(String),
}
