use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    /// Operands live on different index sets, or have the wrong length.
    #[error("dimension mismatch: {0}")]
    Dimension(String),
    /// An argument is outside the domain of the operation.
    #[error("domain error: {0}")]
    Domain(String),
    /// A plan or method was requested for a size it cannot serve.
    #[error("configuration error: {0}")]
    Configuration(String),
    #[error("non-finite entry at position {0}")]
    NonFinite(usize),
    /// `p` has no inverse modulo `n`.
    #[error("{p} is not coprime to {n} (gcd {gcd})")]
    NotCoprime { p: i64, n: i64, gcd: i64 },
    /// An internal cross-check between two independent routes failed.
    #[error("numerical contract violated: {0}")]
    Contract(String),
}

impl Error {
    pub(crate) fn dim(msg: impl Into<String>) -> Self {
        Error::Dimension(msg.into())
    }

    pub(crate) fn domain(msg: impl Into<String>) -> Self {
        Error::Domain(msg.into())
    }
}
