use thiserror::Error;

/// Errors surfaced by the library.
#[derive(Debug, Error)]
pub enum Error {
    /// An argument violated a precondition (inadmissible labels, bad index, ...).
    #[error("domain error: {0}")]
    Domain(String),

    /// Matrix or state dimensions do not line up.
    #[error("dimension mismatch: expected {expected}, got {got}")]
    Dimension { expected: usize, got: usize },

    /// A circuit that must act classically produced a superposition.
    #[error("non-classical circuit on input {input:?}: {detail}")]
    NonClassical { input: Vec<u8>, detail: String },

    /// An internal consistency check failed; indicates a bug, not bad input.
    #[error("integrity error: {0}")]
    Integrity(String),

    /// Malformed circuit JSON or other parse failure.
    #[error("parse error: {0}")]
    Parse(String),
}

pub type Result<T> = std::result::Result<T, Error>;
