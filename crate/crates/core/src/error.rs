use thiserror::Error;

/// Errors raised by the spin toolkit.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    #[error("convention violation: {0}")]
    ConventionViolation(String),
    #[error("{what} index {index} out of range")]
    IndexOutOfRange { what: &'static str, index: usize },
    #[error("invalid velocity: |beta| = {0} is not below 1")]
    InvalidVelocity(f64),
    #[error("singular operator variant: {0}")]
    SingularVariant(&'static str),
    #[error("operator leaks out of the positive-energy subspace (residual {0:e})")]
    SubspaceLeakage(f64),
    #[error("degenerate projector: invariant I1 = {0:e}")]
    DegenerateProjector(f64),
    #[error("zero velocity: projection onto the direction of motion is undefined")]
    ZeroVelocity,
    #[error("invalid parameter: {0}")]
    InvalidParameter(String),
    #[error("non-finite state at step {step}")]
    Divergence { step: usize },
    #[error("internal error: {0}")]
    Internal(String),
}

impl Error {
    /// Short machine-readable tag for the error kind.
    pub fn kind(&self) -> &'static str {
        match self {
            Error::ConventionViolation(_) => "convention_violation",
            Error::IndexOutOfRange { .. } => "index_out_of_range",
            Error::InvalidVelocity(_) => "invalid_velocity",
            Error::SingularVariant(_) => "singular_variant",
            Error::SubspaceLeakage(_) => "subspace_leakage",
            Error::DegenerateProjector(_) => "degenerate_projector",
            Error::ZeroVelocity => "zero_velocity",
            Error::InvalidParameter(_) => "invalid_parameter",
            Error::Divergence { .. } => "divergence",
            Error::Internal(_) => "internal",
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
