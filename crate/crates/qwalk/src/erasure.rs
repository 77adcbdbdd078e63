//! Which-way erasure by rank-1 coin projection.
//!
//! Projecting the coins of the multi-coin state onto |π⟩ = Σ_k α_k|Γ_k⟩
//! leaves the walker with the conditional distribution
//! p(x = 2k-T | π) = γ_k²|α_k|² / 𝒩, 𝒩 = Σ_k γ_k²|α_k|².
//!
//! The map is invertible: a target distribution q determines
//! α_k = √(𝒩 q_k)/γ_k with 𝒩 = (Σ_k q_k/γ_k²)^-1, so any strictly
//! positive target (the single-coin Hadamard walk in particular) can be
//! carved out of the binomial, at the price of succeeding only with
//! probability 𝒩.
//!
//! The closed-form Hadamard-walk amplitudes used as targets are evaluated
//! with exact big-integer binomial sums at every T: the alternating sums
//! cancel by a factor ~2^{T/2}, which floating-point term-by-term summation
//! does not survive beyond small T.

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::ToPrimitive;

use crate::dicke::{gamma_coefficients, DickeDiagonalState};
use crate::dist::{ProbabilityDistribution, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::numerics::big_binomial_row;
use crate::walk::CoinInit;

/// Rank-1 coin projector |π⟩⟨π| with |π⟩ = Σ_k α_k|Γ_k⟩, together with its
/// success probability on the canonical post-walk state.
#[derive(Debug, Clone)]
pub struct DickeProjector {
    steps: usize,
    alpha: Vec<Complex64>,
    success_prob: f64,
}

impl DickeProjector {
    /// Builds a projector from explicit coefficients; α must have length
    /// T+1 and unit norm.
    pub fn new(steps: usize, alpha: Vec<Complex64>) -> Result<Self> {
        if alpha.len() != steps + 1 {
            return Err(Error::DimensionMismatch {
                expected: steps + 1,
                actual: alpha.len(),
            });
        }
        let norm_sqr: f64 = alpha.iter().map(|a| a.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        let gamma = gamma_coefficients(steps);
        let success_prob = alpha
            .iter()
            .zip(&gamma)
            .map(|(a, g)| g * g * a.norm_sqr())
            .sum();
        Ok(DickeProjector {
            steps,
            alpha,
            success_prob,
        })
    }

    /// Inverts a target distribution: the projector whose conditional
    /// distribution on the canonical state is exactly `target`.
    ///
    /// α_k = √(𝒩 q_k)/γ_k, phases fixed real and nonnegative (only |α_k|
    /// enters the conditional distribution). Evaluated with log-sum-exp so
    /// the intermediate ratios q_k/γ_k² cannot overflow.
    pub fn from_target(target: &ProbabilityDistribution) -> Self {
        let t = target.steps();
        let gamma = gamma_coefficients(t);
        let ln_ratio: Vec<f64> = (0..=t)
            .map(|k| target.weight(k).ln() - 2.0 * gamma[k].ln())
            .collect();
        let peak = ln_ratio.iter().cloned().fold(f64::NEG_INFINITY, f64::max);
        let scaled: Vec<f64> = ln_ratio.iter().map(|l| (l - peak).exp()).collect();
        let total: f64 = scaled.iter().sum();
        let alpha = scaled
            .iter()
            .map(|r| Complex64::new((r / total).sqrt(), 0.0))
            .collect();
        let success_prob = (-peak).exp() / total;
        DickeProjector {
            steps: t,
            alpha,
            success_prob,
        }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn alpha(&self) -> &[Complex64] {
        &self.alpha
    }

    /// 𝒩 = Σ_k γ_k²|α_k|²: the probability that the projection succeeds on
    /// the canonical post-walk state.
    pub fn success_prob(&self) -> f64 {
        self.success_prob
    }

    /// Success probability on an arbitrary diagonal state:
    /// Σ_k |β_k|²|α_k|².
    pub fn success_prob_on(&self, state: &DickeDiagonalState) -> Result<f64> {
        if state.steps() != self.steps {
            return Err(Error::DimensionMismatch {
                expected: self.steps + 1,
                actual: state.steps() + 1,
            });
        }
        Ok(state
            .beta()
            .iter()
            .zip(&self.alpha)
            .map(|(b, a)| b.norm_sqr() * a.norm_sqr())
            .sum())
    }

    /// Walker distribution conditioned on the projection succeeding:
    /// p(x = 2k-T) ∝ |β_k|²|α_k|². Errors if the projector is orthogonal to
    /// the state.
    pub fn conditional_distribution(
        &self,
        state: &DickeDiagonalState,
    ) -> Result<ProbabilityDistribution> {
        let mass = self.success_prob_on(state)?;
        if mass <= 0.0 {
            return Err(Error::ImpossibleOutcome);
        }
        let weights = state
            .beta()
            .iter()
            .zip(&self.alpha)
            .map(|(b, a)| b.norm_sqr() * a.norm_sqr())
            .collect();
        ProbabilityDistribution::from_unnormalized(self.steps, weights)
    }

    /// Walker distribution conditioned on the projection failing:
    /// r_k ∝ |β_k|²(1-|α_k|²), the complement in
    /// p = 𝒩 q + (1-𝒩) r. Errors if the projection succeeds with
    /// certainty (no failure branch).
    pub fn complement_distribution(
        &self,
        state: &DickeDiagonalState,
    ) -> Result<ProbabilityDistribution> {
        let mass = self.success_prob_on(state)?;
        if 1.0 - mass <= 1e-12 {
            return Err(Error::NoFailureBranch);
        }
        let weights = state
            .beta()
            .iter()
            .zip(&self.alpha)
            .map(|(b, a)| b.norm_sqr() * (1.0 - a.norm_sqr()).max(0.0))
            .collect();
        ProbabilityDistribution::from_unnormalized(self.steps, weights)
    }
}

/// Coin-resolved amplitudes ψ_c(x = 2k-T) of the single-coin Hadamard walk
/// started in |0⟩, so p(x) = ψ_0(x)² + ψ_1(x)².
///
/// Interior sites come from the alternating binomial sums
/// ψ_0 = 2^{-T/2} Σ_j (-1)^{T-k-j} C(T-k-1, j-1) C(k, j),
/// ψ_1 = 2^{-T/2} Σ_j (-1)^{T-k-j-1} C(T-k-1, j) C(k, j),
/// with C(n, j) = 0 outside 0 ≤ j ≤ n. Those sums do not cover the edges
/// k ∈ {0, T}, where a single coin history contributes:
/// ψ_1(-T) = (-1)^{T-1} 2^{-T/2} and ψ_0(+T) = 2^{-T/2}, giving
/// p(±T) = 2^-T.
#[derive(Debug, Clone)]
pub struct HadamardAmplitudes {
    steps: usize,
    psi0: Vec<f64>,
    psi1: Vec<f64>,
}

impl HadamardAmplitudes {
    pub fn new(steps: usize) -> Self {
        let t = steps;
        let mut psi0 = vec![0.0; t + 1];
        let mut psi1 = vec![0.0; t + 1];
        if t == 0 {
            psi0[0] = 1.0;
            return HadamardAmplitudes { steps, psi0, psi1 };
        }
        let scale = (-(t as f64) / 2.0).exp2();
        // Edges: the all-right history keeps coin 0 with weight 2^{-T/2};
        // the all-left history flips once then stays on coin 1, picking up
        // (-1)^{T-1}.
        psi0[t] = scale;
        psi1[0] = if t.is_multiple_of(2) { -scale } else { scale };
        // Rows of Pascal's triangle, exact, cached per upper index.
        let mut rows: Vec<Option<Vec<BigInt>>> = vec![None; t];
        let row = |n: usize, rows: &mut Vec<Option<Vec<BigInt>>>| -> Vec<BigInt> {
            if rows[n].is_none() {
                rows[n] = Some(big_binomial_row(n).into_iter().map(BigInt::from).collect());
            }
            rows[n].clone().unwrap()
        };
        for k in 1..t {
            let left = row(t - k - 1, &mut rows);
            let right = row(k, &mut rows);
            let mut sum0 = BigInt::from(0);
            for j in 1..=k.min(t - k) {
                let term = &left[j - 1] * &right[j];
                if (t - k - j).is_multiple_of(2) {
                    sum0 += term;
                } else {
                    sum0 -= term;
                }
            }
            let mut sum1 = BigInt::from(0);
            for j in 0..=k.min(t - k - 1) {
                let term = &left[j] * &right[j];
                if (t - k - j).is_multiple_of(2) {
                    sum1 -= term;
                } else {
                    sum1 += term;
                }
            }
            psi0[k] = sum0.to_f64().expect("finite") * scale;
            psi1[k] = sum1.to_f64().expect("finite") * scale;
        }
        HadamardAmplitudes { steps, psi0, psi1 }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn psi0(&self) -> &[f64] {
        &self.psi0
    }

    pub fn psi1(&self) -> &[f64] {
        &self.psi1
    }

    /// p(x = 2k-T) = ψ_0² + ψ_1².
    pub fn distribution(&self) -> ProbabilityDistribution {
        let weights = self
            .psi0
            .iter()
            .zip(&self.psi1)
            .map(|(a, b)| a * a + b * b)
            .collect();
        ProbabilityDistribution::new(self.steps, weights)
            .expect("closed-form weights are normalized")
    }
}

/// Closed-form position distribution of the T-step Hadamard walk for any
/// initial coin, without simulating: |1⟩ mirrors |0⟩ site-by-site, and the
/// symmetric init is their even mixture (the cross terms cancel because the
/// |0⟩-branch amplitudes are real and the i|1⟩-branch ones imaginary).
pub fn hadamard_closed_form(steps: usize, init: CoinInit) -> ProbabilityDistribution {
    let zero = HadamardAmplitudes::new(steps).distribution();
    match init {
        CoinInit::Zero => zero,
        CoinInit::One => zero.mirrored(),
        CoinInit::Symmetric => {
            let mirrored = zero.mirrored();
            let weights = zero
                .weights()
                .iter()
                .zip(mirrored.weights())
                .map(|(a, b)| 0.5 * (a + b))
                .collect();
            ProbabilityDistribution::new(steps, weights).expect("mixture stays normalized")
        }
    }
}

/// The erasure projector |π(T)⟩ that turns the binomial walker distribution
/// into the T-step Hadamard-walk distribution for the given initial coin.
pub fn pi_state(steps: usize, init: CoinInit) -> DickeProjector {
    DickeProjector::from_target(&hadamard_closed_form(steps, init))
}
