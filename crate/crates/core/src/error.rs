use std::fmt;

use thiserror::Error;

/// Errors produced by the library.
#[derive(Debug, Error)]
pub enum Error {
    #[error("unknown state {0}")]
    UnknownState(u32),

    #[error("unknown action `{0}`")]
    UnknownAction(String),

    #[error("state budget of {limit} states exceeded")]
    BudgetExceeded { limit: usize },

    #[error("{0}")]
    Parse(#[from] ParseError),

    #[error("contract violated: {0}")]
    Contract(String),

    #[error("alphabet must not be empty")]
    EmptyAlphabet,

    #[error("malformed LTS json: {0}")]
    Json(String),
}

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum ParseErrorKind {
    Lexical,
    Syntax,
    UnboundName,
    UnguardedRecursion,
}

impl fmt::Display for ParseErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            ParseErrorKind::Lexical => "lexical error",
            ParseErrorKind::Syntax => "syntax error",
            ParseErrorKind::UnboundName => "unbound name",
            ParseErrorKind::UnguardedRecursion => "unguarded recursion",
        };
        f.write_str(s)
    }
}

/// A position-annotated error from the process or formula parser.
#[derive(Clone, Debug, PartialEq, Eq, Error)]
#[error("{line}:{column}: {kind}: {message}")]
pub struct ParseError {
    pub kind: ParseErrorKind,
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(kind: ParseErrorKind, line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError { kind, line, column, message: message.into() }
    }
}
