use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A physical input is outside the operation's domain.
    #[error("invalid {param}: {reason}")]
    Domain { param: String, reason: String },

    /// A configuration (unit system, lattice, regulator ladder) is unusable.
    #[error("configuration error: {0}")]
    Config(String),

    /// An internal consistency check failed after computation.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A limiting procedure did not converge to the requested accuracy.
    #[error("convergence failure: {0}")]
    Convergence(String),
}

impl Error {
    pub fn domain(param: impl Into<String>, reason: impl Into<String>) -> Self {
        Error::Domain {
            param: param.into(),
            reason: reason.into(),
        }
    }

    /// Process exit status the CLI reports for this error.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Domain { .. } | Error::Config(_) => 1,
            Error::Invariant(_) | Error::Convergence(_) => 2,
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;

/// Rejects non-finite or non-positive values.
pub(crate) fn require_positive(param: &str, value: f64) -> Result<f64> {
    if value.is_finite() && value > 0.0 {
        Ok(value)
    } else {
        Err(Error::domain(
            param,
            format!("must be finite and > 0, got {value}"),
        ))
    }
}
