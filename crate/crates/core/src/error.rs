use thiserror::Error;

/// Errors produced while building or checking any part of the pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid Lie type {family}{rank}: {reason}")]
    InvalidType {
        family: char,
        rank: usize,
        reason: &'static str,
    },

    #[error("cannot parse Lie type {0:?} (expected e.g. \"E8\", \"A3\")")]
    ParseType(String),

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error(
        "Jacobi eigensolver did not converge after {sweeps} sweeps (off-diagonal norm {off:e})"
    )]
    NoConvergence { sweeps: usize, off: f64 },

    #[error("Cholesky factorization failed: matrix is not positive definite")]
    NotPositiveDefinite,

    #[error("no scale c with trace(cA) <= {limit} makes det(xI - cA) integral")]
    NoIntegralScale { limit: u64 },

    #[error("characteristic polynomial does not split as F1*F2")]
    FactorizationMismatch,

    #[error("golden-ratio pairing not found: {0}")]
    PairingNotFound(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("structure constants are inconsistent: {0}")]
    Consistency(String),

    #[error("spectral decomposition failed: {0}")]
    Spectral(String),

    #[error("eigenvector has zero Cartan projection")]
    ZeroProjection,

    #[error("graded component at degree {degree} has norm {norm:e}, expected zero for |k| >= h")]
    GradingBound { degree: i64, norm: f64 },

    #[error("exponent {0} must lie in 1..h and be coprime to the Coxeter number h")]
    InvalidExponent(u32),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
