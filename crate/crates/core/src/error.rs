use thiserror::Error;

pub type Result<T> = std::result::Result<T, Error>;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum Error {
    /// Two objects that must live in the same `S_n` do not.
    #[error("weight mismatch: expected n = {expected}, found {found}")]
    WeightMismatch { expected: usize, found: usize },

    /// A closed form was evaluated outside `1 <= r <= n - lambda_2`.
    #[error("r = {r} outside the closed-form range 1..={bound} (bound is n - lambda_2) for shape {shape}")]
    OutOfRange { shape: String, r: usize, bound: usize },

    /// Input too large for the configured cap.
    #[error("n = {n} exceeds the configured cap of {cap} for {what}")]
    ResourceGuard { what: &'static str, n: usize, cap: usize },

    /// An internal identity failed; always signals a bug.
    #[error("invariant violated: {0}")]
    InvariantViolation(String),

    #[error("invalid class measure: {0}")]
    InvalidMeasure(String),

    #[error("precondition failed: {0}")]
    Precondition(String),

    #[error("parse error: {0}")]
    Parse(String),
}
