use thiserror::Error;

/// Errors shared by every module of the crate.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Caller supplied an argument outside the operation's domain.
    #[error("invalid input: {0}")]
    Input(String),

    /// Malformed text input; `line` is 1-based.
    #[error("parse error at line {line}: {message}")]
    Parse { line: usize, message: String },

    /// Malformed JSON formula; `pointer` is a JSON pointer to the offending node.
    #[error("formula schema error at `{pointer}`: {message}")]
    Schema { pointer: String, message: String },

    /// A search exceeded its configured work budget. Never a wrong answer.
    #[error("budget exceeded: {0}")]
    Resource(String),

    /// The splitter game did not terminate within the depth budget.
    #[error("splitter budget of {budget} rounds exhausted with {remaining} arena vertices left")]
    SplitterBudget { budget: usize, remaining: usize },

    /// A pluggable component broke its contract.
    #[error("contract violation: {0}")]
    Contract(String),

    /// An internal invariant failed; indicates a bug or an invalid certificate.
    #[error("invariant violated: {0}")]
    Invariant(String),

    /// A constructive search found nothing below its guaranteed threshold.
    #[error("not found: {0}")]
    NotFound(String),
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn input<T>(msg: impl Into<String>) -> Result<T> {
    Err(Error::Input(msg.into()))
}
