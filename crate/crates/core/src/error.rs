use thiserror::Error;

/// Errors raised by constructions and verification checks.
#[derive(Debug, Error)]
pub enum Error {
    #[error("{0} is not a prime below 256")]
    NotPrime(u32),

    #[error("subspace dimension {dim} exceeds ambient dimension {ambient}")]
    DimensionOutOfRange { dim: usize, ambient: usize },

    #[error("matrix is singular")]
    Singular,

    #[error("shape mismatch: {0}")]
    Shape(String),

    #[error("invalid parameters: {0}")]
    InvalidParameters(String),

    #[error("ring mismatch: {0}")]
    RingMismatch(String),

    #[error("{0} is not a unit in the coefficient ring")]
    NotInvertible(String),

    #[error("group order {0} is not a prime power")]
    NotPGroup(usize),

    #[error("invalid Cayley table: {0}")]
    InvalidTable(String),

    #[error("unknown check `{0}`")]
    UnknownCheck(String),

    #[error("{check} failed: {witness}")]
    Verification {
        check: &'static str,
        witness: serde_json::Value,
    },

    #[error("internal invariant violated: {0}")]
    Internal(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;

impl Error {
    pub(crate) fn verification(check: &'static str, witness: serde_json::Value) -> Self {
        Error::Verification { check, witness }
    }
}
