use thiserror::Error;

/// Errors raised by the category, circuit and factoring layers.
#[derive(Debug, Error, Clone, PartialEq)]
pub enum Error {
    #[error("shape mismatch: expected {expected}, found {found}")]
    ShapeMismatch { expected: String, found: String },

    #[error("not an endomorphism: {dom} -> {cod}")]
    NotEndomorphism { dom: String, cod: String },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid argument: {0}")]
    InvalidArgument(String),

    #[error("cannot parse object expression at byte {pos}: {msg}")]
    Parse { pos: usize, msg: String },

    #[error("base {base} is not coprime to modulus {modulus}")]
    NotCoprime { base: u64, modulus: u64 },

    #[error("unknown operator reference `{0}`")]
    UnknownOperator(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
