use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// A precondition of an operation was not met by the caller.
    #[error("contract violation: {0}")]
    Contract(String),
    /// The linear coefficient of a series is zero, so it has no compositional inverse.
    #[error("singular series: the linear coefficient is zero")]
    SingularSeries,
    /// A computation needs more series coefficients than were supplied.
    #[error("insufficient order: need {needed} coefficients, have {available}")]
    InsufficientOrder { needed: usize, available: usize },
    /// Malformed user input (bad arity, unknown preset name, ...).
    #[error("usage: {0}")]
    Usage(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

pub(crate) fn contract(msg: impl Into<String>) -> Error {
    Error::Contract(msg.into())
}
