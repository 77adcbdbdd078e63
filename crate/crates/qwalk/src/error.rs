use thiserror::Error;

/// Errors shared by the walk, Dicke-subspace, erasure, and POVM modules.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum Error {
    /// A shift would move amplitude past the allocated position grid.
    #[error(
        "position grid exhausted: state has support at |x| = {half_width} and cannot shift further"
    )]
    GridExhausted { half_width: usize },

    /// An exponential-cost routine was asked for more steps than its cap.
    #[error("{what} is capped at T = {max}, requested T = {requested}")]
    StepCapExceeded {
        what: &'static str,
        requested: usize,
        max: usize,
    },

    /// Two objects that must share a step count (or length) do not.
    #[error("dimension mismatch: expected length {expected}, got {actual}")]
    DimensionMismatch { expected: usize, actual: usize },

    /// Momentum index outside the reachable lattice 0..=T.
    #[error("momentum index {index} out of range (valid: 0..={max})")]
    MomentumOutOfRange { index: usize, max: usize },

    /// A vector that must be a unit vector is not.
    #[error("state not normalized: |v|^2 = {norm_sqr}")]
    NotNormalized { norm_sqr: f64 },

    /// Probability weights that fail to form a distribution.
    #[error("invalid probability weights: {reason}")]
    InvalidWeights { reason: String },

    /// Conditioning on an outcome that has zero probability on this state.
    #[error("outcome has zero probability on this state")]
    ImpossibleOutcome,

    /// The failure branch is empty (success probability is 1), so the
    /// complement distribution is undefined.
    #[error("success probability is 1: no failure branch to condition on")]
    NoFailureBranch,
}

pub type Result<T> = std::result::Result<T, Error>;
