use thiserror::Error;

#[derive(Debug, Error)]
pub enum Error {
    #[error("dimension mismatch: expected {expected}, got {got}")]
    DimensionMismatch { expected: usize, got: usize },

    #[error("invalid rational literal `{0}`")]
    ParseRational(String),

    #[error("invalid matrix: {0}")]
    InvalidMatrix(String),

    #[error("invalid mixed strategy: {0}")]
    InvalidStrategy(String),

    #[error("action set must be nonempty")]
    EmptyActionSet,

    #[error("action {index} out of range (player has {len} actions)")]
    ActionOutOfRange { index: usize, len: usize },

    #[error("{n}x{m} game exceeds the size cap n+m <= {cap}")]
    ScaleCap { n: usize, m: usize, cap: usize },

    #[error("precondition violated: {0}")]
    Precondition(String),

    #[error("invalid configuration: {0}")]
    Config(String),

    #[error("tie-breaker `{rule}` at step {step} chose action {action}, outside best-response set {set}")]
    TieBreakViolation {
        rule: String,
        step: u64,
        action: usize,
        set: String,
    },

    #[error("tie-breaker `{rule}` needs a player with exactly 2 actions, got {actions}")]
    IncompatibleRule { rule: String, actions: usize },

    #[error("integer overflow in fictitious-play state at step {0}")]
    Overflow(u64),

    #[error("json: {0}")]
    Json(#[from] serde_json::Error),
}

pub type Result<T> = std::result::Result<T, Error>;
