use thiserror::Error;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid input: {0}")]
    InvalidInput(String),

    #[error("characteristic 2 is not supported")]
    CharacteristicTwo,

    #[error("{0} is not prime")]
    NotPrime(String),

    #[error("degenerate form: radical has dimension {radical_dim}")]
    Degenerate { radical_dim: usize },

    #[error("polynomial is not squarefree: {0}")]
    NotSquarefree(String),

    #[error("twist {0} is not invertible modulo the defining polynomial")]
    NonInvertibleTwist(String),

    #[error("field mismatch: {0} vs {1}")]
    FieldMismatch(String, String),

    #[error("unsupported request: {0}")]
    Unsupported(String),

    #[error("resource limit exceeded: {0}")]
    ResourceLimit(String),
}

impl Error {
    pub(crate) fn invalid(msg: impl Into<String>) -> Self {
        Error::InvalidInput(msg.into())
    }

    /// Process exit code used by the command line front end.
    pub fn exit_code(&self) -> i32 {
        match self {
            Error::Unsupported(_) => 3,
            Error::ResourceLimit(_) => 4,
            _ => 2,
        }
    }
}
