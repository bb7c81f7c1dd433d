use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum Error {
    #[error("invalid Cartan data: {0}")]
    InvalidCartan(String),

    #[error("rank mismatch: expected {expected}, found {found}")]
    RankMismatch { expected: usize, found: usize },

    #[error("index {index} out of range (size {len})")]
    IndexOutOfRange { index: usize, len: usize },

    #[error("Weyl group has more than {guard} elements")]
    GroupTooLarge { guard: usize },

    #[error("context mismatch: {0}")]
    ContextMismatch(String),

    #[error("pairing {pairing} with the coroot is not an integer")]
    NotIntegral { pairing: String },

    #[error("highest weight is not in the dominance cone of the parabolic (simple root {index})")]
    NotParabolicDominant { index: usize },

    #[error("linkage search visited more than {cap} characters")]
    OrbitGuardExceeded { cap: usize },

    #[error("invalid configuration: {0}")]
    InvalidConfig(String),

    #[error("cannot parse rational {input:?}: {reason}")]
    ParseRational { input: String, reason: String },
}
