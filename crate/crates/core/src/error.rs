use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("modulus mismatch: {left:?} vs {right:?}")]
    ModulusMismatch { left: Option<u32>, right: Option<u32> },

    #[error("{n} is not prime (smallest factor {factor})")]
    NotPrime { n: u64, factor: u64 },

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("no convergence after {iterations} iterations (residual {residual:e})")]
    NoConvergence { iterations: usize, residual: f64 },

    #[error("overflow while evaluating {0}")]
    Overflow(String),

    #[error("root count mismatch for n={n}, q={q}: expected {expected}, found {found}")]
    RootCount {
        n: usize,
        q: usize,
        expected: usize,
        found: usize,
    },
}

impl Error {
    /// Numerical failures (as opposed to rejected input).
    pub fn is_numerical(&self) -> bool {
        matches!(
            self,
            Error::NoConvergence { .. } | Error::Overflow(_) | Error::RootCount { .. }
        )
    }
}

pub(crate) fn invalid(msg: impl Into<String>) -> Error {
    Error::InvalidArgument(msg.into())
}
