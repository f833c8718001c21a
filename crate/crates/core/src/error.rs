use thiserror::Error;

/// Errors produced by the group, character and lattice machinery.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("syntax error at position {pos}: {msg}")]
    Syntax { pos: usize, msg: String },

    #[error("degree {0} exceeds the maximum of {max} points", max = crate::perm::MAX_DEGREE)]
    DegreeOverflow(usize),

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("invalid parameter: {0}")]
    InvalidParameter(String),

    #[error("{what} cap exceeded: {size} > {cap}")]
    CapExceeded {
        what: &'static str,
        size: String,
        cap: usize,
    },

    #[error("generator {0} is not an element of the ambient group")]
    NotInGroup(String),

    #[error("{0} is not prime")]
    NotPrime(u64),

    #[error("class functions belong to different groups")]
    GroupMismatch,

    #[error("division by zero")]
    DivisionByZero,

    #[error("{k} is not coprime to the conductor {conductor}")]
    NotCoprime { k: i64, conductor: u64 },

    #[error("coefficient {0} is not a rational integer")]
    NonIntegral(String),

    #[error("character table computation failed: {0}")]
    TableFailure(String),
}

impl Error {
    /// Whether the error signals a resource cap rather than malformed input.
    pub fn is_cap(&self) -> bool {
        matches!(self, Error::CapExceeded { .. })
    }
}

pub type Result<T> = std::result::Result<T, Error>;
