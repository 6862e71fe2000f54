use thiserror::Error;

/// Errors produced anywhere in the toolkit.
#[derive(Debug, Error)]
pub enum Error {
    #[error("incompatible permutations: degree {left} vs degree {right}")]
    DegreeMismatch { left: usize, right: usize },

    #[error("not a permutation: {0}")]
    NotAPermutation(String),

    #[error("{what} exceeded cap of {limit} (reached {reached}); raise the cap to continue")]
    ResourceLimit {
        what: &'static str,
        limit: usize,
        reached: usize,
    },

    #[error("parse error in {input:?} at position {position}: {message}")]
    Parse {
        input: String,
        position: usize,
        message: String,
    },

    #[error("element {element} does not belong to {group}")]
    ElementShape { element: String, group: String },

    #[error("identity in connection set")]
    IdentityInConnectionSet,

    #[error("connection set is not inverse-closed: inverse of {element} is missing")]
    MissingInverse { element: String },

    #[error("{0}")]
    Construction(String),

    #[error("invalid witness {witness}: membership of y*a and y*a^-1 differs for a = {violating}")]
    InvalidWitness { witness: String, violating: String },

    #[error("certificate self-check failed: {0}")]
    SelfCheck(String),

    #[error("{0}")]
    Unsupported(String),

    #[error("malformed input: {0}")]
    Format(String),

    #[error(transparent)]
    Io(#[from] std::io::Error),

    #[error(transparent)]
    Json(#[from] serde_json::Error),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
