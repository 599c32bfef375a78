use thiserror::Error;

/// Errors raised while parsing, building or analysing finite rings.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("invalid construction: {0}")]
    Validation(String),

    #[error("{what} has {size} elements, exceeding the cap of {cap}")]
    SizeLimit { what: String, size: u128, cap: usize },

    #[error("element index {index} out of range for a ring of size {size}")]
    OutOfRange { index: usize, size: usize },

    #[error("bad element literal `{literal}`: {msg}")]
    Element { literal: String, msg: String },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("malformed certificate: {0}")]
    Certificate(String),

    #[error("unknown statement `{0}`")]
    UnknownStatement(String),

    #[error("configuration error: {0}")]
    Config(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn validation(msg: impl Into<String>) -> Self {
        Error::Validation(msg.into())
    }

    pub(crate) fn element(literal: impl ToString, msg: impl Into<String>) -> Self {
        Error::Element {
            literal: literal.to_string(),
            msg: msg.into(),
        }
    }
}
