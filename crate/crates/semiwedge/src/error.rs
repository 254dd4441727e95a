//! Error type shared by the whole crate.

use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    /// Text input could not be parsed. `pos` is a 0-based byte offset into the
    /// source string.
    #[error("parse error at column {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    /// Matrix or list dimensions do not line up.
    #[error("dimension mismatch: {0}")]
    Dimension(String),

    /// Structurally invalid input (bad partition, bad config, bad index).
    #[error("invalid input: {0}")]
    Invalid(String),

    /// The operation is well-defined mathematically but not representable
    /// here (e.g. a series unbounded in the truncated direction).
    #[error("unsupported: {0}")]
    Unsupported(String),

    /// Exact scalar division failed (coefficient not divisible).
    #[error("division failed: {0}")]
    Division(String),
}

impl Error {
    pub fn invalid(msg: impl Into<String>) -> Self {
        Error::Invalid(msg.into())
    }

    pub fn parse(pos: usize, msg: impl Into<String>) -> Self {
        Error::Parse { pos, msg: msg.into() }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
