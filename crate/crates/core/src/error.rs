use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Error)]
pub enum Error {
    #[error("matrix is not square ({rows}x{cols})")]
    NotSquare { rows: usize, cols: usize },

    #[error("dimension mismatch: expected {expected}, found {found}")]
    DimensionMismatch { expected: usize, found: usize },

    #[error("invalid Hilbert space dimension {0} (need d >= 2)")]
    InvalidDimension(usize),

    #[error("matrix contains non-finite entries")]
    NonFinite,

    #[error("matrix is not Hermitian (residual {residual:.3e})")]
    NotHermitian { residual: f64 },

    #[error("matrix is not unitary (residual {residual:.3e})")]
    NotUnitary { residual: f64 },

    #[error("matrix is not traceless (|tr| = {trace:.3e})")]
    NotTraceless { trace: f64 },

    #[error("GKS matrix is not positive semidefinite (min eigenvalue {min_eigenvalue:.3e})")]
    NotPositiveSemidefinite { min_eigenvalue: f64 },

    #[error("negative rate {0}")]
    NegativeRate(f64),

    #[error("vector is not normalised (|a| = {norm:.15})")]
    NotNormalized { norm: f64 },

    #[error("vector violates the universal zero pattern (off-support mass {residual:.3e})")]
    ZeroPattern { residual: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("negative evolution time {0}")]
    NegativeTime(f64),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("plan is inconsistent with its components: {0}")]
    PlanMismatch(String),

    #[error("verification failed: residual {residual:.3e} exceeds {tolerance:.1e}")]
    Verification { residual: f64, tolerance: f64 },

    #[error("malformed document: {0}")]
    Format(String),

    #[error(transparent)]
    Json(#[from] serde_json::Error),

    #[error(transparent)]
    Io(#[from] std::io::Error),
}

impl Error {
    /// I/O and document-shape failures, as opposed to domain invariant breaches.
    pub fn is_input_error(&self) -> bool {
        matches!(self, Error::Json(_) | Error::Io(_) | Error::Format(_))
    }
}
