use thiserror::Error;

/// Errors raised anywhere in the calculus, the oracle or the witness counter.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("syntax error at byte {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("unknown preset `{0}`")]
    UnknownPreset(String),

    #[error("invalid input: {0}")]
    Input(String),

    #[error("invalid finite structure: {0}")]
    Structure(String),

    #[error("not hereditarily cellular: {0}")]
    NotCellular(String),

    #[error("capacity exceeded: {0}")]
    Capacity(String),

    /// An exact division left a remainder, or two counting methods disagreed.
    #[error("consistency check failed: {0}")]
    Consistency(String),

    #[error("i/o error: {0}")]
    Io(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn input(msg: impl Into<String>) -> Self {
        Error::Input(msg.into())
    }

    pub(crate) fn capacity(msg: impl Into<String>) -> Self {
        Error::Capacity(msg.into())
    }

    pub(crate) fn consistency(msg: impl Into<String>) -> Self {
        Error::Consistency(msg.into())
    }
}
