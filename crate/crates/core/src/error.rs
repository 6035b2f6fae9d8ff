use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("matrix is not Hermitian (max deviation {deviation:e} > tolerance {tol:e})")]
    NotHermitian { deviation: f64, tol: f64 },
    #[error(
        "eigensolver did not converge within {sweeps} sweeps (off-diagonal norm {off_norm:e})"
    )]
    NoConvergence { sweeps: usize, off_norm: f64 },
    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },
    #[error("non-finite value: {0}")]
    NonFinite(String),
    #[error("Hubbard repulsion U{channel} must be nonzero")]
    ZeroRepulsion { channel: u8 },
    #[error("temperature must be positive, got {0}")]
    NonpositiveTemperature(f64),
    #[error("invalid density matrix: {0}")]
    InvalidState(String),
    #[error("no root: {0}")]
    NoRoot(String),
    #[error("never entangled on the scanned temperature range [{lo}, {hi}]")]
    NeverEntangled { lo: f64, hi: f64 },
    #[error("invalid axis: {0}")]
    InvalidAxis(String),
}

impl Error {
    /// Stable variant name, used in CLI diagnostics.
    pub fn name(&self) -> &'static str {
        match self {
            Error::NotHermitian { .. } => "NotHermitian",
            Error::NoConvergence { .. } => "NoConvergence",
            Error::DimensionMismatch { .. } => "DimensionMismatch",
            Error::NonFinite(_) => "NonFinite",
            Error::ZeroRepulsion { .. } => "ZeroRepulsion",
            Error::NonpositiveTemperature(_) => "NonpositiveTemperature",
            Error::InvalidState(_) => "InvalidState",
            Error::NoRoot(_) => "NoRoot",
            Error::NeverEntangled { .. } => "NeverEntangled",
            Error::InvalidAxis(_) => "InvalidAxis",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
