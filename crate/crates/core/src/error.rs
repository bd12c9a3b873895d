use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    #[error("invalid permutation: {0}")]
    InvalidPermutation(String),

    #[error("length mismatch: {left} vs {right}")]
    LengthMismatch { left: usize, right: usize },

    /// The requested computation does not fit the size contract.
    #[error("n = {n} exceeds the limit of {limit} for {what}")]
    TooLarge { n: usize, limit: usize, what: &'static str },

    #[error("insertion position {position} out of range 1..={max}")]
    PositionOutOfRange { position: usize, max: usize },

    #[error("invalid fence: {0}")]
    InvalidFence(String),

    #[error("fence set is not a downset of the forcing order: {0}")]
    NotDownset(String),

    #[error("congruence is not essential (contains {0})")]
    NotEssential(String),

    #[error("rail collapses: f({a},{b},{{}}) belongs to the congruence", a = .n - 1, b = .n)]
    RailCollapses { n: usize },

    #[error("start permutation {0} is not in the language")]
    NotInLanguage(String),

    #[error("not a zigzag language: {0}")]
    NotZigzag(String),

    #[error("pattern set is not well-behaved: {reason}")]
    NotWellBehaved { reason: String, completion: Vec<String> },

    #[error("parse error: {0}")]
    Parse(String),

    /// An internal self-check failed; this indicates a bug, never bad input.
    #[error("internal verification failed: {0}")]
    Verification(String),
}
