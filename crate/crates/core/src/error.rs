use thiserror::Error;

pub type Result<T, E = OttoError> = std::result::Result<T, E>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum OttoError {
    #[error("operator is not Hermitian (deviation {deviation:e})")]
    NotHermitian { deviation: f64 },

    #[error("invalid density matrix: {0}")]
    InvalidState(String),

    #[error("time {t} is outside the stroke [0, {duration}]")]
    OutOfRange { t: f64, duration: f64 },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error(
        "time-ordered exponential did not converge after {steps} steps (last change {change:e})"
    )]
    NoConvergence { steps: usize, change: f64 },

    #[error("no limit cycle found (residual {residual:e})")]
    NoLimitCycle { residual: f64 },

    #[error("{quantity}: symbolic form {symbolic} disagrees with energy balance {direct}")]
    DecompositionMismatch {
        quantity: &'static str,
        symbolic: f64,
        direct: f64,
    },

    #[error("negative work variance {0:e}")]
    NegativeVariance(f64),

    #[error("configuration does not operate as an engine (q_h = {q_h}, w_tot = {w_tot})")]
    NotEngine { q_h: f64, w_tot: f64 },

    #[error("no finite bracket for the tilt minimisation at eta = {eta}")]
    BracketFailure { eta: f64 },
}

impl OttoError {
    /// Numerical failures as opposed to bad input.
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Self::NoConvergence { .. }
                | Self::NoLimitCycle { .. }
                | Self::DecompositionMismatch { .. }
                | Self::NegativeVariance(_)
                | Self::BracketFailure { .. }
                | Self::InvalidState(_)
                | Self::NotHermitian { .. }
        )
    }
}
