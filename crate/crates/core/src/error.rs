use std::fmt;

use thiserror::Error;

/// A syntax error in a presentation or relation file, with a 1-based position.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParseError {
    pub line: usize,
    pub column: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, column: usize, message: impl Into<String>) -> Self {
        ParseError {
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

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("malformed word: letter index {letter} outside an alphabet of {size} generators")]
    MalformedWord { letter: usize, size: usize },
    #[error("invalid alphabet: {0}")]
    InvalidAlphabet(String),
    #[error("cannot orient the zero polynomial")]
    ZeroRelator,
    #[error("polynomial is not homogeneous: {0}")]
    NonHomogeneous(String),
    #[error("degree bound {bound} is smaller than left-hand side degree {degree}")]
    DegreeBoundTooSmall { bound: u32, degree: u32 },
    #[error("system is completed to degree {completed}, but degree {requested} was requested")]
    InsufficientCompletion { completed: u32, requested: u32 },
    #[error("size guard exceeded: {0}")]
    SizeGuard(String),
    #[error("argument must be nonnegative, got {0}")]
    NegativeArgument(i64),
    #[error("series has {len} samples, at least {min} are required")]
    SeriesTooShort { len: usize, min: usize },
    #[error("expected a {expected} series")]
    WrongFlavor { expected: &'static str },
    #[error("result degree {degree} exceeds the truncation degree {max}")]
    Truncation { degree: u32, max: u32 },
    #[error("unsupported input: {0}")]
    Unsupported(String),
    #[error("invalid argument: {0}")]
    InvalidArgument(String),
    #[error("parse error at {0}")]
    Parse(#[from] ParseError),
}

pub type Result<T> = std::result::Result<T, Error>;
