use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("series for M({a}, {b}, {z}) did not converge within {max_terms} terms")]
    SeriesDiverged {
        a: f64,
        b: f64,
        z: f64,
        max_terms: usize,
    },

    #[error("no bracket found for oscillator level {index} while scanning nu up to {nu_max}")]
    LevelNotBracketed { index: usize, nu_max: f64 },

    #[error("memory budget exceeded: assembly needs {required} bytes, budget is {budget} bytes")]
    MemoryBudget { required: u64, budget: u64 },

    #[error("matrix size mismatch: expected length {expected}, got {got}")]
    SizeMismatch { expected: usize, got: usize },

    #[error("index out of range: {0}")]
    IndexOutOfRange(String),

    #[error("representation consistency failure: {0}")]
    RepresentationFailure(String),

    #[error(
        "projection rank mismatch in class {class:?}: projected {got}, character formula {want}"
    )]
    ProjectionRank {
        class: [usize; 4],
        got: usize,
        want: usize,
    },

    #[error("overlap matrix not positive definite in block {block} (smallest Ritz value {min_ritz:.3e})")]
    OverlapNotSpd { block: String, min_ritz: f64 },

    #[error("state is not normalized: |sum psi^2 - 1| = {deviation:.3e}")]
    NotNormalized { deviation: f64 },

    #[error("unknown state selector {selector}; available: {available}")]
    UnknownSelector { selector: String, available: String },

    #[error("verification failed: {failed} of {total} checks did not pass")]
    VerificationFailed { failed: usize, total: usize },

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
