use thiserror::Error;

use crate::cover::ValidationReport;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("degree mismatch: expected {expected}, found {found}")]
    DegreeMismatch { expected: usize, found: usize },

    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("generators do not act transitively on {degree} points")]
    NotTransitive { degree: usize },

    #[error("seed for block closure must contain point 0")]
    SeedMissingBase,

    #[error("degree cap exceeded: degree {degree} is above the configured cap {cap}")]
    DegreeCapExceeded { degree: usize, cap: usize },

    #[error("block system is not invariant under the permutation {0}")]
    NotInvariant(String),

    #[error("invalid cover: {0}")]
    InvalidCover(ValidationReport),

    #[error("non-integral or negative genus (2g - 2 = {0})")]
    BadGenus(i64),

    #[error("invalid point label: {0:?}")]
    InvalidPoint(String),

    #[error("invalid orbifold structure: {0}")]
    InvalidOrbifold(String),

    #[error("invalid weight {num}/{den}: weights must satisfy 0 <= w < 1")]
    InvalidWeight { num: i64, den: i64 },

    #[error("invalid weight profile: {0}")]
    InvalidProfile(String),

    #[error("namespace mismatch: expected {expected}, found {found}")]
    NamespaceMismatch {
        expected: &'static str,
        found: &'static str,
    },

    #[error("self-check failed: {0}")]
    SelfCheck(String),
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
