use thiserror::Error;

/// Failure modes shared by every module of the crate.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Input outside the domain of an operation (non-subgroup, non-unit, ...).
    #[error("domain error: {0}")]
    Domain(String),
    /// A documented precondition of the operation does not hold.
    #[error("precondition failed: {0}")]
    Precondition(String),
    /// Exact division in a cyclotomic ring has no integral quotient.
    #[error("not divisible: {0}")]
    NotDivisible(String),
    /// Element is not in the span of the requested basis.
    #[error("not in span: {0}")]
    NotInSpan(String),
    /// An enumeration or search exceeded its configured bound.
    #[error("capacity exceeded: {0}")]
    CapacityExceeded(String),
    /// The operation is not available for this group.
    #[error("unsupported: {0}")]
    Unsupported(String),
    /// Malformed literal or JSON document.
    #[error("parse error: {0}")]
    Parse(String),
    /// An internal consistency check failed. Always a bug.
    #[error("internal invariant violated: {0}")]
    Internal(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn domain<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Domain(msg.into()))
}

pub(crate) fn precondition<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Precondition(msg.into()))
}
