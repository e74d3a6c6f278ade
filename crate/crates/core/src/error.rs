use thiserror::Error;

/// Errors raised by the engine.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum MassError {
    /// An operation was called outside its mathematical domain.
    #[error("domain error: {0}")]
    Domain(String),

    /// Group closure grew past the configured element cap.
    #[error("group closure exceeded the cap of {cap} elements")]
    SizeLimit { cap: usize },

    /// Malformed input record.
    #[error("line {line}: {msg}")]
    Parse { line: usize, msg: String },

    #[error("unresolved subfield label {0:?}")]
    UnresolvedLabel(String),

    #[error("io error on {path}: {msg}")]
    Io { path: String, msg: String },
}

impl MassError {
    pub fn domain(msg: impl Into<String>) -> Self {
        MassError::Domain(msg.into())
    }
}

pub type Result<T> = std::result::Result<T, MassError>;
