use thiserror::Error;

/// Everything that can go wrong in the symbol / factorization / simulation pipeline.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("coefficient at index {index} is not finite ({value})")]
    InvalidCoefficient { index: usize, value: f64 },

    #[error("grid size {size} is not a power of two")]
    InvalidGridSize { size: usize },

    #[error("grid size {size} is too coarse for band width {band} (need at least {required})")]
    GridTooCoarse {
        size: usize,
        band: usize,
        required: usize,
    },

    #[error("symbol is not positive (minimum {min_value:e}); it cannot be inverted")]
    SymbolNotInvertible { min_value: f64 },

    #[error("symbol is near-singular: {detail}")]
    SymbolNearSingular { detail: String },

    #[error("truncation too aggressive: {what} tail ratio {ratio:e} exceeds {tolerance:e}")]
    TruncationWarning {
        what: &'static str,
        ratio: f64,
        tolerance: f64,
    },

    #[error("requested section of order {requested} but only {available} correlations are known")]
    InsufficientCorrelations { requested: usize, available: usize },

    #[error("Toeplitz section is not positive definite (reflection coefficient {reflection} at step {step})")]
    NotPositiveDefinite { step: usize, reflection: f64 },

    #[error("polynomial is not minimum phase (smallest root modulus {min_modulus})")]
    NotMinimumPhase { min_modulus: f64 },

    #[error("circulant embedding has a negative eigenvalue {eigenvalue:e}; enlarge the embedding")]
    EmbeddingNotPsd { eigenvalue: f64 },

    #[error("path of length {length} is too short (need more than {required})")]
    InsufficientData { length: usize, required: usize },

    #[error("regression design matrix is singular")]
    DegenerateDesign,

    #[error("band width {band} exceeds the root-finding limit {limit}; use the cepstral route")]
    DegreeTooHigh { band: usize, limit: usize },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}

pub type Result<T> = std::result::Result<T, Error>;
