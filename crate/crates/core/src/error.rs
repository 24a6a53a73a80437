use thiserror::Error;

use crate::report::Report;

/// Failures that are not law violations of a well-formed structure.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Structurally broken input: ids out of range, tables of the wrong shape.
    #[error("malformed input: {0}")]
    Malformed(String),

    /// Text input that does not follow the document grammar.
    #[error("line {line}: {message} (at `{token}`)")]
    Parse {
        line: usize,
        token: String,
        message: String,
    },

    /// The requested computation is larger than the configured budget.
    #[error("budget exceeded: {what} requires {required}, limit is {limit}")]
    Budget {
        what: String,
        required: u128,
        limit: u128,
    },

    /// An operation was called on an input outside its domain.
    #[error("precondition failed: {0}")]
    Precondition(String),

    /// A constructor or certified operation found violated laws.
    #[error("law violation:\n{0}")]
    LawViolation(Box<Report>),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn malformed(msg: impl Into<String>) -> Self {
        Error::Malformed(msg.into())
    }

    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn budget(what: impl Into<String>, required: u128, limit: u128) -> Self {
        Error::Budget {
            what: what.into(),
            required,
            limit,
        }
    }
}

impl From<Report> for Error {
    fn from(report: Report) -> Self {
        Error::LawViolation(Box::new(report))
    }
}
