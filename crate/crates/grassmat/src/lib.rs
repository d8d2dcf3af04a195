//! File formats and the command-line front-end for `grassmat-core`.

pub mod cli;
pub mod formats;
pub mod polytext;
pub mod sampling;
pub mod sexpr;

/// A malformed polynomial, trace expression or JSON document.
#[derive(Clone, Debug, PartialEq, Eq, thiserror::Error)]
#[error("parse error: {message}")]
pub struct ParseError {
    pub message: String,
}

impl ParseError {
    pub fn new(message: impl Into<String>) -> Self {
        ParseError { message: message.into() }
    }
}
