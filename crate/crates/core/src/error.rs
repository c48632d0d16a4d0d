//! Crate-wide error type.
//!
//! Query errors are split into [`Error::OutOfRange`] (an argument violates a
//! positional bound) and [`Error::NotFound`] (a well-formed occurrence query
//! has no answer, e.g. asking for the 5th one in a bitvector with 3 ones).
//! Input parsing and shape checks report [`Error::Validation`] with the
//! offending line and rule.

use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error)]
pub enum Error {
    /// A position or index argument is outside the structure's bounds.
    #[error("argument {arg} out of range: {value} not in [{min}, {max}]")]
    OutOfRange {
        arg: &'static str,
        value: usize,
        min: usize,
        max: usize,
    },

    /// An occurrence query has no answer (distinct from a bounds violation).
    #[error("occurrence {index} not found: only {available} available")]
    NotFound { index: usize, available: usize },

    /// Malformed or rule-violating input; `line` is 1-based in the source text.
    #[error("validation error at line {line}: {rule}")]
    Validation { line: usize, rule: String },

    /// An operation was called on a structure that does not support it
    /// (e.g. a column lookup on a grid with duplicate x coordinates).
    #[error("contract violation: {0}")]
    Contract(String),

    /// Malformed serialized container.
    #[error("format error: {0}")]
    Format(String),

    #[error("i/o error: {0}")]
    Io(#[from] std::io::Error),
}

impl Error {
    pub fn validation(line: usize, rule: impl Into<String>) -> Self {
        Error::Validation {
            line,
            rule: rule.into(),
        }
    }
}
