//! Multi-coin walk compressed onto the symmetric (Dicke) subspace.
//!
//! Giving the walker a fresh Hadamard coin for each of T steps makes the
//! coins a which-way record. Every coin is touched exactly once, so the
//! final state is supported on the T+1 symmetric coin states |Γ_k⟩ (the
//! normalized sum of all bitstrings with T-k ones), one per reachable site:
//!
//! |φ_T⟩ = Σ_k γ_k |x = 2k-T⟩ ⊗ |Γ_k⟩,  γ_k = √(C(T,k) 2^-T).
//!
//! Everything here works in that T+1-dimensional representation; the 2^T
//! brute-force evolution exists as a cross-check oracle, not a production
//! path.
//!
//! The momentum basis on the reachable lattice,
//! |m⟩ = (T+1)^-1/2 Σ_k e^{-i2πkm/(T+1)} |x = 2k-T⟩, pairs the walker with
//! the non-orthogonal coin family |G_m⟩ = Σ_k γ_k e^{i2πkm/(T+1)} |Γ_k⟩:
//! |φ_T⟩ = (T+1)^-1/2 Σ_m |m⟩ ⊗ |G_m⟩. Momentum indices outside 0..=T have
//! no representation and are rejected.

use num_complex::Complex64;

use crate::dist::{ProbabilityDistribution, NORMALIZATION_TOL};
use crate::error::{Error, Result};
use crate::numerics::{binomial_f64, LnFactorials};

/// The 2^T brute-force oracle is capped here by default.
pub const BRUTE_FORCE_MAX_STEPS: usize = 20;

/// Schmidt coefficients γ_k = √(C(T,k) 2^-T) for k = 0..=T.
///
/// Computed in log space (compensated ln-factorial table), so the squares
/// sum to 1 within 1e-12 for T up to 1024.
pub fn gamma_coefficients(steps: usize) -> Vec<f64> {
    let t = steps;
    let lnfac = LnFactorials::up_to(t);
    let ln2 = std::f64::consts::LN_2;
    (0..=t)
        .map(|k| (0.5 * (lnfac.ln_binomial(t, k) - t as f64 * ln2)).exp())
        .collect()
}

/// Phase e^{i 2π k m / (T+1)} with the exponent reduced mod T+1 first.
pub(crate) fn lattice_phase(k: usize, m: usize, modulus: usize) -> Complex64 {
    let r = (k * m) % modulus;
    Complex64::from_polar(1.0, std::f64::consts::TAU * r as f64 / modulus as f64)
}

/// A state diagonal in the paired (position, Dicke) basis:
/// Σ_k β_k |x = 2k-T⟩ ⊗ |Γ_k⟩.
#[derive(Debug, Clone, PartialEq)]
pub struct DickeDiagonalState {
    steps: usize,
    beta: Vec<Complex64>,
}

impl DickeDiagonalState {
    /// Builds a normalized state; the amplitude vector must have length T+1
    /// and unit norm.
    pub fn new(steps: usize, beta: Vec<Complex64>) -> Result<Self> {
        if beta.len() != steps + 1 {
            return Err(Error::DimensionMismatch {
                expected: steps + 1,
                actual: beta.len(),
            });
        }
        let norm_sqr: f64 = beta.iter().map(|b| b.norm_sqr()).sum();
        if !norm_sqr.is_finite() || (norm_sqr - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::NotNormalized { norm_sqr });
        }
        Ok(DickeDiagonalState { steps, beta })
    }

    /// The post-walk state of the multi-coin walk: β_k = γ_k.
    pub fn canonical(steps: usize) -> Self {
        let beta = gamma_coefficients(steps)
            .into_iter()
            .map(|g| Complex64::new(g, 0.0))
            .collect();
        DickeDiagonalState { steps, beta }
    }

    /// Possibly sub-normalized state, used by [`compress`] for the
    /// symmetric projection of a non-symmetric input.
    pub(crate) fn from_projection(steps: usize, beta: Vec<Complex64>) -> Self {
        debug_assert_eq!(beta.len(), steps + 1);
        DickeDiagonalState { steps, beta }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn beta(&self) -> &[Complex64] {
        &self.beta
    }

    pub fn norm_sqr(&self) -> f64 {
        self.beta.iter().map(|b| b.norm_sqr()).sum()
    }

    /// Lattice position of site k: x = 2k - T.
    pub fn position(&self, k: usize) -> i64 {
        2 * k as i64 - self.steps as i64
    }

    /// Position distribution |β_k|² (the coins traced out). The state must
    /// be normalized.
    pub fn spatial_marginal(&self) -> Result<ProbabilityDistribution> {
        ProbabilityDistribution::new(self.steps, self.beta.iter().map(|b| b.norm_sqr()).collect())
    }

    /// Overlap ⟨m|·⟩ with the lattice momentum state:
    /// (T+1)^-1/2 Σ_k e^{+i2πkm/(T+1)} β_k. Valid m: 0..=T.
    pub fn momentum_amplitude(&self, m: usize) -> Result<Complex64> {
        if m > self.steps {
            return Err(Error::MomentumOutOfRange {
                index: m,
                max: self.steps,
            });
        }
        let modulus = self.steps + 1;
        let sum: Complex64 = self
            .beta
            .iter()
            .enumerate()
            .map(|(k, &b)| lattice_phase(k, m, modulus) * b)
            .sum();
        Ok(sum / (modulus as f64).sqrt())
    }

    /// All T+1 momentum overlaps.
    pub fn momentum_amplitudes(&self) -> Vec<Complex64> {
        (0..=self.steps)
            .map(|m| self.momentum_amplitude(m).expect("m in range"))
            .collect()
    }
}

/// Full 2^T-dimensional multi-coin state after T steps. The walker position
/// of coin bitstring b is determined: x = T - 2·ones(b) (bit i is the
/// outcome of coin i; 0 steps right).
#[derive(Debug, Clone)]
pub struct FullMulticoinState {
    steps: usize,
    amps: Vec<Complex64>,
}

impl FullMulticoinState {
    /// From explicit bitstring amplitudes (length 2^T).
    pub fn from_amplitudes(steps: usize, amps: Vec<Complex64>) -> Result<Self> {
        if amps.len() != 1usize << steps {
            return Err(Error::DimensionMismatch {
                expected: 1usize << steps,
                actual: amps.len(),
            });
        }
        Ok(FullMulticoinState { steps, amps })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn amplitudes(&self) -> &[Complex64] {
        &self.amps
    }

    pub fn amplitude(&self, bitstring: usize) -> Complex64 {
        self.amps[bitstring]
    }

    /// Walker position attached to a coin bitstring.
    pub fn position_of(&self, bitstring: usize) -> i64 {
        self.steps as i64 - 2 * bitstring.count_ones() as i64
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }
}

/// Evolves the multi-coin walk the expensive way: a dense vector over all
/// 2^T coin configurations, applying each coin's Hadamard and the
/// conditional shift step by step, tracking the walker position per
/// configuration. Asserts the position ends up bitstring-determined, which
/// is the fact the compressed representation relies on. Cost O(T·2^T).
pub fn brute_force_mcqw(steps: usize) -> Result<FullMulticoinState> {
    brute_force_mcqw_with_cap(steps, BRUTE_FORCE_MAX_STEPS)
}

/// [`brute_force_mcqw`] with an explicit cap (the CLI lets QWALK_MAX_T
/// raise it).
pub fn brute_force_mcqw_with_cap(steps: usize, cap: usize) -> Result<FullMulticoinState> {
    if steps > cap {
        return Err(Error::StepCapExceeded {
            what: "brute-force multi-coin evolution",
            requested: steps,
            max: cap,
        });
    }
    let t = steps;
    let dim = 1usize << t;
    let mut amps = vec![Complex64::new(0.0, 0.0); dim];
    let mut pos = vec![0i64; dim];
    amps[0] = Complex64::new(1.0, 0.0);
    let inv_sqrt2 = std::f64::consts::FRAC_1_SQRT_2;
    for i in 0..t {
        let bit = 1usize << i;
        for b in 0..dim {
            if b & bit == 0 {
                // Configurations differing only in a not-yet-used coin share
                // the walker position.
                pos[b | bit] = pos[b];
                let (u, v) = (amps[b], amps[b | bit]);
                amps[b] = (u + v) * inv_sqrt2;
                amps[b | bit] = (u - v) * inv_sqrt2;
            }
        }
        for (b, p) in pos.iter_mut().enumerate() {
            *p += if b & bit == 0 { 1 } else { -1 };
        }
    }
    for (b, &p) in pos.iter().enumerate() {
        assert_eq!(
            p,
            t as i64 - 2 * b.count_ones() as i64,
            "walker position must be determined by the coin record"
        );
    }
    Ok(FullMulticoinState { steps: t, amps })
}

/// Projects a full multi-coin state onto the Dicke-diagonal form and
/// reports what is left over.
///
/// Returns (projection, residual_norm) with
/// β_k = Σ_{ones(b) = T-k} amp(b) / √C(T,k) and
/// residual_norm = ‖state - symmetrized state‖. The projection is
/// sub-normalized exactly when the residual is nonzero; for anything
/// produced by [`brute_force_mcqw`] the residual vanishes.
pub fn compress(full: &FullMulticoinState) -> (DickeDiagonalState, f64) {
    let t = full.steps;
    let mut sums = vec![Complex64::new(0.0, 0.0); t + 1];
    for (b, &a) in full.amps.iter().enumerate() {
        let k = t - b.count_ones() as usize;
        sums[k] += a;
    }
    let counts: Vec<f64> = (0..=t).map(|k| binomial_f64(t, k)).collect();
    let beta: Vec<Complex64> = sums
        .iter()
        .zip(&counts)
        .map(|(&s, &c)| s / c.sqrt())
        .collect();
    // Accumulated componentwise against the bucket mean rather than as
    // ‖state‖² - ‖projection‖², whose cancellation would floor the result
    // near √ε even for an exactly symmetric input.
    let residual_sqr: f64 = full
        .amps
        .iter()
        .enumerate()
        .map(|(b, &a)| {
            let k = t - b.count_ones() as usize;
            (a - sums[k] / counts[k]).norm_sqr()
        })
        .sum();
    (
        DickeDiagonalState::from_projection(t, beta),
        residual_sqr.sqrt(),
    )
}

/// Coin state paired with momentum m: |G_m⟩ = Σ_k γ_k e^{i2πkm/(T+1)}|Γ_k⟩,
/// as its Dicke-basis components. Unit norm but non-orthogonal across m.
pub fn g_state(steps: usize, m: usize) -> Result<Vec<Complex64>> {
    if m > steps {
        return Err(Error::MomentumOutOfRange {
            index: m,
            max: steps,
        });
    }
    let modulus = steps + 1;
    Ok(gamma_coefficients(steps)
        .into_iter()
        .enumerate()
        .map(|(k, g)| lattice_phase(k, m, modulus) * g)
        .collect())
}

/// Applies the cyclic momentum shift V^n, which multiplies Dicke component
/// k by e^{i2πkn/(T+1)}: it maps |G_m⟩ to |G_{(m+n) mod (T+1)}⟩. Negative n
/// shifts backwards.
pub fn cyclic_shift(components: &[Complex64], n: i64) -> Vec<Complex64> {
    let modulus = components.len();
    let shift = n.rem_euclid(modulus as i64) as usize;
    components
        .iter()
        .enumerate()
        .map(|(k, &c)| lattice_phase(k, shift, modulus) * c)
        .collect()
}
