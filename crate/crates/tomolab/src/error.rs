use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid dimension {dim}: {reason}")]
    InvalidDimension { dim: usize, reason: &'static str },

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    /// The normal equations are singular and no regularization was requested.
    /// `missing` counts the operator-space directions the design never probed.
    #[error(
        "rank-deficient inverse covariance: spans {rank} of {expected} directions \
         ({missing} missing); regularize with epsilon > 0 or take more steps"
    )]
    RankDeficient {
        rank: usize,
        expected: usize,
        missing: usize,
    },

    /// An input violated a mathematical precondition (non-Hermitian matrix,
    /// non-unitary matrix, state with negative eigenvalues, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// An iterative numerical routine failed to reach its target.
    #[error("numerical failure in {context}: {detail}")]
    Numerical { context: &'static str, detail: String },

    #[error("quadrature tolerance not met: requested {requested:.3e}, achieved {achieved:.3e}")]
    QuadratureTolerance { requested: f64, achieved: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn param(name: &'static str, reason: impl Into<String>) -> Self {
        Error::InvalidParameter {
            name,
            reason: reason.into(),
        }
    }
}
