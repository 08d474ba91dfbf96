//! Error type shared across the crate.

use thiserror::Error;

/// Errors raised by constructors, simulation primitives and generators.
#[derive(Debug, Error)]
pub enum Error {
    #[error("qubit count {n} outside supported range [1, {max}]")]
    QubitCount { n: usize, max: usize },

    #[error("expected array of length {expected}, got {got}")]
    LengthMismatch { expected: usize, got: usize },

    #[error("basis index {index} out of range for {n} qubits")]
    IndexOutOfRange { index: u64, n: usize },

    #[error("basis transform limited to n <= {max}, got n = {n}")]
    TransformTooLarge { n: usize, max: usize },

    #[error("{0}")]
    Domain(String),

    #[error("Hamiltonian has no terms")]
    EmptyTerms,

    #[error("parameter update annihilated every coefficient")]
    DegenerateUpdate,

    #[error("line {line}: {message}")]
    Parse { line: usize, message: String },

    #[error("no unsatisfiable instance found in {attempts} attempts (m likely too small)")]
    Generation { attempts: usize },
}

impl Error {
    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }

    pub(crate) fn parse(line: usize, msg: impl Into<String>) -> Self {
        Error::Parse {
            line,
            message: msg.into(),
        }
    }
}

pub type Result<T> = std::result::Result<T, Error>;
