use std::fmt;

use thiserror::Error;

/// Location-tagged syntax error for program and QBF text.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub(crate) fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        Self {
            line,
            column,
            message: message.into(),
        }
    }
}

impl fmt::Display for ParseError {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}:{}: {}", self.line, self.column, self.message)
    }
}

impl std::error::Error for ParseError {}

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),

    #[error("universe of {atoms} atoms exceeds the enumeration guard of {limit}")]
    GuardExceeded { atoms: usize, limit: usize },

    #[error("universe mismatch: {0}")]
    UniverseMismatch(String),

    #[error("invariant violation: {0}")]
    InvariantViolation(String),

    #[error("unknown atom `{0}`")]
    UnknownAtom(String),

    #[error("program contains constraints")]
    ConstraintPresent,

    #[error("program is not normal: rule {0} has a disjunctive head")]
    NotNormal(usize),

    #[error("generated atom `{0}` already occurs in the program")]
    NameCollision(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
