use thiserror::Error;

use crate::kernel::Ring;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum AlgebraError {
    #[error("invalid model: {0}")]
    InvalidModel(String),

    #[error("ring mismatch: expected {expected}, found {found}")]
    RingMismatch { expected: Ring, found: Ring },

    #[error("model mismatch: element has {found} generators, model has {expected}")]
    ModelMismatch { expected: usize, found: usize },

    #[error("{0}")]
    InvalidGenerator(String),

    #[error("{what} is not in the {subring}")]
    NotInSubring { what: String, subring: &'static str },

    #[error("{0} is not homogeneous")]
    Inhomogeneous(String),

    #[error("unknown identity `{0}`")]
    UnknownIdentity(String),

    #[error("replay mismatch: {0}")]
    ReplayMismatch(String),
}

pub type Result<T, E = AlgebraError> = std::result::Result<T, E>;
