use thiserror::Error;

/// Errors raised by the simulator library.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A parameter is outside its admissible range.
    #[error("invalid `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    /// A sample collection that must be non-empty (or hold a minimum count) does not.
    #[error("not enough samples for {what}: need at least {needed}, got {got}")]
    InsufficientSamples {
        what: &'static str,
        needed: usize,
        got: usize,
    },

    /// The attacker strategy cannot be combined with the chosen modulation scheme.
    #[error("attack `{attack}` cannot be used with scheme `{scheme}`")]
    IncompatibleAttack { attack: String, scheme: String },

    /// An equation has no admissible root for the supplied inputs.
    #[error("no solution: {0}")]
    NoSolution(String),

    /// An iterative routine ran out of iterations.
    #[error("{0} did not converge")]
    NoConvergence(&'static str),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
