use thiserror::Error;

/// Errors produced by the numerical routines in this crate.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// The adaptive ODE integrator could not make progress.
    #[error("integration failed at t = {t}: {reason}")]
    Integration { t: f64, reason: String },

    /// No sign change of the shooting residual could be found.
    #[error("failed to bracket eigenvalue in [{lo}, {hi}]")]
    Bracket { lo: f64, hi: f64 },

    /// An iterative method ran out of steps.
    #[error("no convergence after {steps} steps: {what}")]
    NonConvergence { steps: usize, what: String },

    /// Adaptive quadrature could not reach its tolerance.
    #[error("quadrature did not converge: estimated error {error:e}")]
    Quadrature { error: f64 },
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}
