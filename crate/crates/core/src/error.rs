use thiserror::Error;

/// Crate-wide error type.
///
/// Everything here is a definite, reportable outcome: a semi-decision ran out
/// of fuel, a precondition was violated, or a contract that the construction
/// relies on failed to hold for the given inputs.
#[derive(Debug, Clone, Error, PartialEq, Eq)]
pub enum Error {
    /// A stream stopped making progress before its fuel ran out.
    #[error("stream stalled after {pulls} pulls ({context})")]
    Stall { pulls: u64, context: String },

    /// A finite stream was pulled past its end.
    #[error("stream exhausted after {produced} dots")]
    Exhausted { produced: usize },

    /// Enumeration of an unbounded successor set was requested.
    #[error("unsupported enumeration: {0}")]
    UnsupportedEnumeration(String),

    /// A stated precondition does not hold for the given arguments.
    #[error("precondition violated: {0}")]
    Precondition(String),

    /// Two operands belong to different spaces.
    #[error("space mismatch: {left} vs {right}")]
    SpaceMismatch { left: String, right: String },

    /// A morphism or transducer broke one of its structural contracts.
    #[error("contract violation: {0}")]
    ContractViolation(String),

    /// A graded fragment could not be constructed from the given dots.
    #[error("invalid fragment: {0}")]
    InvalidFragment(String),

    /// A metric presentation is unusable (net condition, missing distances, ...).
    #[error("invalid presentation: {0}")]
    InvalidPresentation(String),

    /// Textual input did not parse.
    #[error("parse error: {0}")]
    Parse(String),

    /// A value fell outside the operation's domain.
    #[error("out of range: {0}")]
    OutOfRange(String),
}

pub type Result<T> = std::result::Result<T, Error>;
