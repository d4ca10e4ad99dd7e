use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("state has zero norm and cannot be normalized")]
    ZeroNormState,

    #[error("state norm {0} is not 1 within tolerance")]
    NotNormalized(f64),

    #[error("non-finite amplitude in state")]
    NonFinite,

    #[error("register needs between 1 and {max} spins, got {got}")]
    TooManySpins { got: usize, max: usize },

    #[error("state vector has length {got}, expected {expected}")]
    BadLength { got: usize, expected: usize },

    #[error("outcome probability {0:e} is below the resolvable floor")]
    NegligibleProbability(f64),

    #[error("expected a register of {expected} amplitudes, got {got}")]
    WrongArity { got: usize, expected: usize },

    #[error("partition must be a non-empty proper subset of the spins: {0}")]
    BadPartition(String),

    #[error("dimension mismatch: {0} vs {1}")]
    DimensionMismatch(usize, usize),

    #[error("invalid cavity parameters: {0}")]
    InvalidParams(String),

    #[error("bad sweep range: {0}")]
    BadRange(String),

    #[error("target phase difference {target} not reached inside [{lo}, {hi}]")]
    NoSolutionInBracket { target: f64, lo: f64, hi: f64 },

    #[error("node index {index} out of range for {n_spins} spins")]
    BadNodeIndex { index: usize, n_spins: usize },

    #[error("bad ensemble weights: {0}")]
    BadWeights(String),
}
