use thiserror::Error;

use crate::ring::RingDescriptor;

pub type Result<T, E = Error> = std::result::Result<T, E>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("ring mismatch: {left} vs {right}")]
    DescriptorMismatch {
        left: RingDescriptor,
        right: RingDescriptor,
    },

    #[error("modulus must be at least 2, got {0}")]
    InvalidModulus(u64),

    #[error("invalid variable list: {0}")]
    InvalidVariables(String),

    #[error("no value bound for variable `{0}`")]
    MissingVariable(String),

    #[error("cannot parse `{input}`: {reason}")]
    Parse { input: String, reason: String },

    #[error("operation requires {expected}, got {found}")]
    WrongRing {
        expected: &'static str,
        found: RingDescriptor,
    },

    #[error("modulus {0} exceeds the enumeration limit of 16")]
    ModulusTooLarge(u64),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("witness check failed: {0}")]
    InvalidWitness(String),
}

impl Error {
    pub(crate) fn precondition(msg: impl Into<String>) -> Self {
        Error::Precondition(msg.into())
    }

    pub(crate) fn parse(input: &str, reason: impl Into<String>) -> Self {
        Error::Parse {
            input: input.to_string(),
            reason: reason.into(),
        }
    }
}
