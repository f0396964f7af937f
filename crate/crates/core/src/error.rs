//! Error type shared by every module of the crate.

use thiserror::Error;

/// Crate-wide error type.
#[derive(Debug, Error)]
pub enum Error {
    /// Two objects that must have equal dimension do not.
    #[error("dimension mismatch: {left} vs {right}")]
    DimensionMismatch { left: usize, right: usize },

    /// A text input could not be parsed; `line` is 1-based.
    #[error("parse error at line {line}: {msg}")]
    Parse { line: usize, msg: String },

    /// A generator matrix spans a code that is not doubly even.
    #[error("not doubly even: codeword {witness} has weight {weight}")]
    NotDoublyEven { witness: String, weight: usize },

    /// An unknown builtin code name was requested.
    #[error("unknown builtin code `{0}`")]
    UnknownBuiltin(String),

    /// Operands belong to different algebraic structures.
    #[error("operand context mismatch: {0}")]
    Context(String),

    /// An enumeration or materialization would exceed a configured limit.
    #[error("capacity exceeded: {what} needs {needed}, limit is {limit}")]
    Capacity {
        what: &'static str,
        needed: u128,
        limit: u128,
    },

    /// An internal structural guarantee failed to hold.
    #[error("structural failure: {0}")]
    Structure(String),

    /// Underlying I/O error.
    #[error(transparent)]
    Io(#[from] std::io::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
