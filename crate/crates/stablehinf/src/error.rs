use num_complex::Complex64;
use thiserror::Error;

/// Errors surfaced by the synthesis pipeline.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("root finding did not converge: {message}")]
    RootFinding {
        message: String,
        /// Best iterate at the point of failure, for diagnostics.
        best: Vec<Complex64>,
    },

    #[error("evaluation too close to a pole at s = {at}")]
    PoleHit { at: Complex64 },

    #[error("{0} is only defined for neutral-type systems")]
    NotNeutral(String),

    #[error("inconclusive: {0}")]
    Inconclusive(String),

    #[error("contour integration failed: {0}")]
    Contour(String),

    #[error("search box did not stabilize: {0}")]
    BoxGrowth(String),

    #[error("factorization failed: {0}")]
    Factorization(String),

    #[error("plant assumptions violated: {0}")]
    Assumptions(String),

    #[error("infeasible: {0}")]
    Infeasible(String),

    #[error("interpolation failed: {0}")]
    Interpolation(String),

    #[error("FIR split failed: {0}")]
    FirSplit(String),

    #[error("parse error: {0}")]
    Parse(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
