use thiserror::Error;

/// Errors raised by the fibonadic library.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// An argument lies outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),

    /// A value does not fit the integer width chosen by the caller.
    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// Normalization (or another bounded search) ran out of its step budget.
    #[error("budget of {budget} steps exhausted during {during}")]
    BudgetExhausted { budget: u64, during: &'static str },

    /// Text could not be parsed into a domain object.
    #[error("parse error: {0}")]
    Parse(String),

    /// A computed object violated a structural invariant it must satisfy.
    #[error("structure error: {0}")]
    Structure(String),

    /// Both operands carry an infinite tail.
    #[error("unsupported operands: {0}")]
    Unsupported(String),
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(msg: impl Into<String>) -> Self {
        Error::Parse(msg.into())
    }
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
