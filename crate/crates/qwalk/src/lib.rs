//! Quantum walks on the line, and the measurements that turn a classical
//! walk distribution back into quantum ones.
//!
//! A discrete-time walk driven by a single Hadamard coin spreads
//! ballistically (σ ∝ T). Give the walker a fresh coin for every step and
//! the coins record which way it went at each step: tracing them out leaves
//! the diffusive binomial distribution (σ = √T) of a classical random walk.
//! Because every coin is touched exactly once, the T-step multi-coin state
//! compresses onto the T+1-dimensional symmetric (Dicke) subspace,
//! |φ_T⟩ = Σ_k γ_k |x = 2k-T⟩ ⊗ |Γ_k⟩ with γ_k = √(C(T,k) 2^-T).
//!
//! Measuring the coins in a basis that erases the which-way information
//! converts the binomial into something ballistic again:
//! - a rank-1 projection onto Σ_k α_k|Γ_k⟩ leaves the conditional
//!   distribution p(x = 2k-T) ∝ γ_k²|α_k|², and a target distribution can
//!   be inverted for α ([`DickeProjector::from_target`]);
//! - a maximum-confidence POVM built from the non-orthogonal family
//!   |G_m⟩ = Σ_k γ_k e^{i2πkm/(T+1)}|Γ_k⟩ collapses the walker onto a
//!   uniform (maximally ballistic) distribution whenever it is conclusive
//!   ([`PovmSet`]).
//!
//! Runnable demonstrations live in `examples/`; the thin `qwalk` binary
//! exposes the same experiments as subcommands emitting CSV or JSON.

pub mod cli;
pub mod dicke;
pub mod dist;
pub mod erasure;
mod error;
pub mod numerics;
pub mod output;
pub mod povm;
pub mod walk;

pub use dicke::{
    brute_force_mcqw, compress, cyclic_shift, g_state, gamma_coefficients, DickeDiagonalState,
    FullMulticoinState,
};
pub use dist::ProbabilityDistribution;
pub use erasure::{hadamard_closed_form, pi_state, DickeProjector, HadamardAmplitudes};
pub use error::{Error, Result};
pub use povm::{g_tilde, optimal_eta, success_probability, MeasurementRecord, Outcome, PovmSet};
pub use walk::{
    classical_distribution, dtqw_distribution, dtqw_evolve, path_sum_oracle, CoinInit, WalkState,
};
