//! Maximum-confidence discrimination of the coin states |G_m⟩.
//!
//! The walk state decomposes as |φ_T⟩ = (T+1)^-1/2 Σ_m |m⟩ ⊗ |G_m⟩ over
//! the momentum basis, but the |G_m⟩ are not orthogonal, so no measurement
//! identifies m with certainty. The reciprocal family
//! |G̃_m⟩ = Σ_k γ_k^-1 e^{i2πkm/(T+1)} |Γ_k⟩ is biorthogonal:
//! ⟨G̃_m|G_n⟩ = (T+1) δ_mn. Scaling each |G̃_m⟩⟨G̃_m| by the largest η
//! that keeps Σ_m Π_m ≤ 1 gives the maximum-confidence POVM
//!
//! Π_m = η |G̃_m⟩⟨G̃_m|,  η = 1/(2^T (T+1)),
//! Π_? = 1 - Σ_m Π_m = Σ_k (1 - 1/C(T,k)) |Γ_k⟩⟨Γ_k|.
//!
//! A conclusive click m collapses the walker onto the momentum state |m⟩,
//! i.e. the uniform position distribution; the walker escapes the binomial
//! with probability P_success = (T+1) 2^-T, which is optimal because the
//! uniform target needs min_x p(x)/q(x) = (T+1) min_x p(x) of the binomial.

use num_complex::Complex64;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::dicke::{lattice_phase, DickeDiagonalState};
use crate::dist::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::numerics::{binomial_u128, LnFactorials};

/// Above this the η-scaled operators leave f64 range (2^T overflows);
/// the CLI applies a much lower default cap (60) for output quality.
pub const POVM_LIBRARY_MAX_STEPS: usize = 1000;

/// Reciprocal coin state |G̃_m⟩, Dicke components γ_k^-1 e^{i2πkm/(T+1)}.
/// Magnitudes are computed in log space; their dynamic range is 2^{T/2}.
pub fn g_tilde(steps: usize, m: usize) -> Result<Vec<Complex64>> {
    if m > steps {
        return Err(Error::MomentumOutOfRange {
            index: m,
            max: steps,
        });
    }
    let t = steps;
    let lnfac = LnFactorials::up_to(t);
    let ln2 = std::f64::consts::LN_2;
    let modulus = t + 1;
    Ok((0..=t)
        .map(|k| {
            let inv_gamma = (0.5 * (t as f64 * ln2 - lnfac.ln_binomial(t, k))).exp();
            lattice_phase(k, m, modulus) * inv_gamma
        })
        .collect())
}

/// Largest admissible conclusive weight: η = 1/(2^T (T+1)), the reciprocal
/// of the top eigenvalue (T+1) max_k γ_k^-2 = (T+1) 2^T of Σ_m |G̃_m⟩⟨G̃_m|.
pub fn optimal_eta(steps: usize) -> f64 {
    (-(steps as f64)).exp2() / (steps as f64 + 1.0)
}

/// ln η, available where η itself underflows.
pub fn ln_optimal_eta(steps: usize) -> f64 {
    -(steps as f64) * std::f64::consts::LN_2 - (steps as f64 + 1.0).ln()
}

/// Probability that the measurement is conclusive on the canonical state:
/// P_success = (T+1) 2^-T.
pub fn success_probability(steps: usize) -> f64 {
    (steps as f64 + 1.0) * (-(steps as f64)).exp2()
}

/// ln P_success, available where P_success itself underflows.
pub fn ln_success_probability(steps: usize) -> f64 {
    (steps as f64 + 1.0).ln() - (steps as f64) * std::f64::consts::LN_2
}

/// Measurement outcome: a conclusive momentum index, or the inconclusive
/// remainder element.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Outcome {
    Conclusive(usize),
    Inconclusive,
}

impl std::fmt::Display for Outcome {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        match self {
            Outcome::Conclusive(m) => write!(f, "{m}"),
            Outcome::Inconclusive => write!(f, "?"),
        }
    }
}

/// One sampled shot: which element clicked and where the walker landed.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct MeasurementRecord {
    pub outcome: Outcome,
    pub position: i64,
}

/// The assembled maximum-confidence POVM for a T-step multi-coin walk.
#[derive(Debug, Clone)]
pub struct PovmSet {
    steps: usize,
    eta: f64,
    g_tilde: Vec<Vec<Complex64>>,
    pi_fail_diag: Vec<f64>,
}

impl PovmSet {
    /// Builds the T+2 elements. Errors above [`POVM_LIBRARY_MAX_STEPS`],
    /// where 2^T no longer fits in f64.
    pub fn build(steps: usize) -> Result<Self> {
        if steps > POVM_LIBRARY_MAX_STEPS {
            return Err(Error::StepCapExceeded {
                what: "POVM assembly",
                requested: steps,
                max: POVM_LIBRARY_MAX_STEPS,
            });
        }
        let t = steps;
        let g_tilde_vecs = (0..=t)
            .map(|m| g_tilde(t, m).expect("m in range"))
            .collect();
        let lnfac = LnFactorials::up_to(t);
        let pi_fail_diag = (0..=t)
            .map(|k| match binomial_u128(t, k) {
                // Exactly 0 at k = 0 and k = T, where C(T,k) = 1.
                Some(c) => 1.0 - 1.0 / c as f64,
                None => 1.0 - (-lnfac.ln_binomial(t, k)).exp(),
            })
            .collect();
        Ok(PovmSet {
            steps: t,
            eta: optimal_eta(t),
            g_tilde: g_tilde_vecs,
            pi_fail_diag,
        })
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn eta(&self) -> f64 {
        self.eta
    }

    /// Components of |G̃_m⟩ in the Dicke basis.
    pub fn g_tilde(&self, m: usize) -> &[Complex64] {
        &self.g_tilde[m]
    }

    /// Diagonal of Π_? in the Dicke basis: 1 - 1/C(T,k).
    pub fn pi_fail_diag(&self) -> &[f64] {
        &self.pi_fail_diag
    }

    fn check_state(&self, state: &DickeDiagonalState) -> Result<()> {
        if state.steps() != self.steps {
            return Err(Error::DimensionMismatch {
                expected: self.steps + 1,
                actual: state.steps() + 1,
            });
        }
        Ok(())
    }

    /// Probabilities of the T+2 outcomes on a diagonal state, ordered
    /// m = 0..=T then inconclusive. P(m) = η Σ_k |β_k ⟨Γ_k|G̃_m⟩|² because
    /// the position register is orthogonal between sites.
    pub fn outcome_probabilities(&self, state: &DickeDiagonalState) -> Result<Vec<f64>> {
        self.check_state(state)?;
        let beta = state.beta();
        let mut probs: Vec<f64> = (0..=self.steps)
            .map(|m| {
                let overlap_sqr: f64 = beta
                    .iter()
                    .zip(&self.g_tilde[m])
                    .map(|(b, g)| (b * g.conj()).norm_sqr())
                    .sum();
                self.eta * overlap_sqr
            })
            .collect();
        let fail: f64 = beta
            .iter()
            .zip(&self.pi_fail_diag)
            .map(|(b, f)| b.norm_sqr() * f)
            .sum();
        probs.push(fail);
        Ok(probs)
    }

    /// Walker distribution after observing `outcome`.
    ///
    /// Conclusive m: the coin contraction ⟨G̃_m| leaves position amplitudes
    /// ∝ β_k γ_k^-1 e^{-i2πkm/(T+1)}; no operator square roots are needed
    /// for a rank-1 element. On the canonical state this is exactly the
    /// momentum state |m⟩, i.e. uniform over the T+1 sites.
    ///
    /// Inconclusive: Π_? is diagonal, so p(x = 2k-T) ∝ |β_k|²(1 - 1/C(T,k)),
    /// which vanishes at x = ±T.
    pub fn post_measurement_distribution(
        &self,
        state: &DickeDiagonalState,
        outcome: Outcome,
    ) -> Result<ProbabilityDistribution> {
        self.check_state(state)?;
        let beta = state.beta();
        let weights: Vec<f64> = match outcome {
            Outcome::Conclusive(m) => {
                if m > self.steps {
                    return Err(Error::MomentumOutOfRange {
                        index: m,
                        max: self.steps,
                    });
                }
                beta.iter()
                    .zip(&self.g_tilde[m])
                    .map(|(b, g)| (b * g.conj()).norm_sqr())
                    .collect()
            }
            Outcome::Inconclusive => beta
                .iter()
                .zip(&self.pi_fail_diag)
                .map(|(b, f)| b.norm_sqr() * f)
                .collect(),
        };
        if weights.iter().sum::<f64>() <= 0.0 {
            return Err(Error::ImpossibleOutcome);
        }
        ProbabilityDistribution::from_unnormalized(self.steps, weights)
    }

    /// Samples `shots` measurements of the POVM followed by a position
    /// readout.
    ///
    /// Reproducibility contract: shot i is drawn from substream i of a
    /// counter-based ChaCha8 generator keyed by `seed`, so record i depends
    /// only on (seed, i), independent of execution order or chunking. Each
    /// shot draws the outcome, then the position, by inverse CDF.
    pub fn sample(
        &self,
        state: &DickeDiagonalState,
        seed: u64,
        shots: usize,
    ) -> Result<Vec<MeasurementRecord>> {
        let probs = self.outcome_probabilities(state)?;
        let outcome_cdf = cumulative(&probs);
        let outcomes: Vec<Outcome> = (0..=self.steps)
            .map(Outcome::Conclusive)
            .chain([Outcome::Inconclusive])
            .collect();
        // Position CDF per outcome, skipping outcomes that cannot click.
        let position_tables: Vec<Option<(Vec<f64>, Vec<i64>)>> = outcomes
            .iter()
            .zip(&probs)
            .map(|(&o, &p)| {
                if p <= 0.0 {
                    return None;
                }
                let dist = self
                    .post_measurement_distribution(state, o)
                    .expect("outcome has positive probability");
                let positions = (0..=self.steps).map(|k| dist.position(k)).collect();
                Some((cumulative(dist.weights()), positions))
            })
            .collect();
        let mut records = Vec::with_capacity(shots);
        for shot in 0..shots {
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            rng.set_stream(shot as u64);
            let oi = draw(&outcome_cdf, rng.random::<f64>());
            let (cdf, positions) = position_tables[oi]
                .as_ref()
                .expect("drawn outcome has positive probability");
            let ki = draw(cdf, rng.random::<f64>());
            records.push(MeasurementRecord {
                outcome: outcomes[oi],
                position: positions[ki],
            });
        }
        Ok(records)
    }
}

fn cumulative(weights: &[f64]) -> Vec<f64> {
    let mut acc = 0.0;
    weights
        .iter()
        .map(|w| {
            acc += w;
            acc
        })
        .collect()
}

/// Smallest index with cdf[i] > u; the last index catches u at the top.
fn draw(cdf: &[f64], u: f64) -> usize {
    let target = u * cdf.last().copied().unwrap_or(1.0);
    cdf.iter()
        .position(|&c| c > target)
        .unwrap_or(cdf.len() - 1)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::dicke::g_state;
    use proptest::prelude::*;

    const TOL: f64 = 1e-12;

    #[test]
    fn eta_golden_values() {
        assert!((optimal_eta(1) - 0.25).abs() <= TOL);
        assert!((optimal_eta(5) - 1.0 / 192.0).abs() <= TOL);
        assert!((ln_optimal_eta(5) - (1.0f64 / 192.0).ln()).abs() <= TOL);
    }

    #[test]
    fn success_probability_golden_values() {
        assert_eq!(success_probability(1), 1.0);
        assert!((success_probability(6) - 7.0 / 64.0).abs() <= TOL);
        assert!((ln_success_probability(6) - (7.0f64 / 64.0).ln()).abs() <= TOL);
    }

    #[test]
    fn success_probability_is_the_min_ratio_bound() {
        // P = min_x p(x) / q(x) with q uniform: (T+1) min_x p(x), and the
        // binomial minimum sits at the edges, p(±T) = 2^-T.
        for t in 0..=20usize {
            let p = crate::walk::classical_distribution(t);
            let min_ratio = p
                .weights()
                .iter()
                .map(|w| w * (t as f64 + 1.0))
                .fold(f64::INFINITY, f64::min);
            assert_eq!(success_probability(t), min_ratio, "T={t}");
        }
    }

    #[test]
    fn g_tilde_is_biorthogonal_to_g() {
        for t in 1..=10usize {
            let scale = (t + 1) as f64;
            for m in 0..=t {
                let gt = g_tilde(t, m).unwrap();
                for n in 0..=t {
                    let g = g_state(t, n).unwrap();
                    let overlap: Complex64 = gt.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();
                    let want = if m == n { scale } else { 0.0 };
                    assert!(
                        (overlap - Complex64::new(want, 0.0)).norm() <= 1e-9 * scale,
                        "T={t} m={m} n={n}: {overlap}"
                    );
                }
            }
        }
    }

    #[test]
    fn g_tilde_validates_m() {
        assert!(matches!(
            g_tilde(3, 4),
            Err(Error::MomentumOutOfRange { index: 4, max: 3 })
        ));
    }

    #[test]
    fn eta_matches_the_numeric_top_eigenvalue() {
        // Σ_m |G̃_m⟩⟨G̃_m| assembled explicitly is diagonal with top entry
        // (T+1) 2^T; η must be its reciprocal.
        for t in 1..=12usize {
            let dim = t + 1;
            let mut matrix = vec![Complex64::new(0.0, 0.0); dim * dim];
            for m in 0..=t {
                let gt = g_tilde(t, m).unwrap();
                for j in 0..dim {
                    for k in 0..dim {
                        matrix[j * dim + k] += gt[j] * gt[k].conj();
                    }
                }
            }
            let lambda_max = (0..dim).map(|j| matrix[j * dim + j].re).fold(0.0, f64::max);
            for j in 0..dim {
                for k in 0..dim {
                    if j != k {
                        assert!(
                            matrix[j * dim + k].norm() <= 1e-12 * lambda_max,
                            "off-diagonal T={t} ({j},{k})"
                        );
                    }
                }
            }
            let rel = (optimal_eta(t) * lambda_max - 1.0).abs();
            assert!(
                rel <= 1e-12,
                "T={t}: eta * lambda_max = 1 violated by {rel}"
            );
        }
    }

    #[test]
    fn povm_is_complete() {
        for t in [1usize, 5, 10] {
            let povm = PovmSet::build(t).unwrap();
            let dim = t + 1;
            let mut total = vec![Complex64::new(0.0, 0.0); dim * dim];
            for m in 0..=t {
                let gt = povm.g_tilde(m);
                for j in 0..dim {
                    for k in 0..dim {
                        total[j * dim + k] += povm.eta() * gt[j] * gt[k].conj();
                    }
                }
            }
            for (k, &f) in povm.pi_fail_diag().iter().enumerate() {
                total[k * dim + k] += Complex64::new(f, 0.0);
            }
            for j in 0..dim {
                for k in 0..dim {
                    let want = if j == k { 1.0 } else { 0.0 };
                    assert!(
                        (total[j * dim + k] - Complex64::new(want, 0.0)).norm() <= TOL,
                        "T={t} entry ({j},{k})"
                    );
                }
            }
        }
    }

    #[test]
    fn fail_diag_values() {
        let povm = PovmSet::build(2).unwrap();
        assert_eq!(povm.pi_fail_diag()[0], 0.0);
        assert!((povm.pi_fail_diag()[1] - 0.5).abs() <= TOL);
        assert_eq!(povm.pi_fail_diag()[2], 0.0);
        let povm = PovmSet::build(40).unwrap();
        assert_eq!(povm.pi_fail_diag()[0], 0.0);
        assert_eq!(povm.pi_fail_diag()[40], 0.0);
    }

    #[test]
    fn library_cap_is_enforced() {
        assert!(matches!(
            PovmSet::build(POVM_LIBRARY_MAX_STEPS + 1),
            Err(Error::StepCapExceeded { .. })
        ));
    }

    #[test]
    fn canonical_outcome_probabilities() {
        let phi = DickeDiagonalState::canonical(2);
        let povm = PovmSet::build(2).unwrap();
        let probs = povm.outcome_probabilities(&phi).unwrap();
        for p in &probs {
            assert!((p - 0.25).abs() <= TOL, "{probs:?}");
        }
        let phi = DickeDiagonalState::canonical(6);
        let povm = PovmSet::build(6).unwrap();
        let probs = povm.outcome_probabilities(&phi).unwrap();
        for (m, p) in probs.iter().take(7).enumerate() {
            assert!((p - 1.0 / 64.0).abs() <= TOL, "m={m}");
        }
        assert!((probs[7] - 57.0 / 64.0).abs() <= TOL);
        for t in 1..=20usize {
            let phi = DickeDiagonalState::canonical(t);
            let probs = PovmSet::build(t)
                .unwrap()
                .outcome_probabilities(&phi)
                .unwrap();
            let each = (-(t as f64)).exp2();
            for (m, p) in probs.iter().take(t + 1).enumerate() {
                assert!((p / each - 1.0).abs() <= TOL, "T={t} m={m}");
            }
            let total: f64 = probs.iter().sum();
            assert!((total - 1.0).abs() <= TOL, "T={t} total {total}");
        }
    }

    #[test]
    fn conclusive_collapse_is_uniform_on_the_canonical_state() {
        for t in [2usize, 6] {
            let phi = DickeDiagonalState::canonical(t);
            let povm = PovmSet::build(t).unwrap();
            let uniform =
                ProbabilityDistribution::new(t, vec![1.0 / (t as f64 + 1.0); t + 1]).unwrap();
            for m in 0..=t {
                let d = povm
                    .post_measurement_distribution(&phi, Outcome::Conclusive(m))
                    .unwrap();
                assert!(d.total_variation(&uniform).unwrap() <= TOL, "T={t} m={m}");
            }
        }
    }

    #[test]
    fn inconclusive_collapse_trims_the_edges() {
        let phi = DickeDiagonalState::canonical(2);
        let povm = PovmSet::build(2).unwrap();
        let d = povm
            .post_measurement_distribution(&phi, Outcome::Inconclusive)
            .unwrap();
        assert_eq!(d.weight(0), 0.0);
        assert!((d.weight(1) - 1.0).abs() <= TOL);
        assert_eq!(d.weight(2), 0.0);

        let phi = DickeDiagonalState::canonical(6);
        let povm = PovmSet::build(6).unwrap();
        let d = povm
            .post_measurement_distribution(&phi, Outcome::Inconclusive)
            .unwrap();
        assert_eq!(d.weight(0), 0.0, "r(-6) = 0 exactly");
        assert_eq!(d.weight(6), 0.0, "r(+6) = 0 exactly");
    }

    #[test]
    fn impossible_outcomes_are_rejected() {
        // T=1: every coin configuration is symmetric, the measurement is
        // always conclusive, so conditioning on ? is impossible.
        let phi = DickeDiagonalState::canonical(1);
        let povm = PovmSet::build(1).unwrap();
        assert!(matches!(
            povm.post_measurement_distribution(&phi, Outcome::Inconclusive),
            Err(Error::ImpossibleOutcome)
        ));
        assert!(matches!(
            povm.post_measurement_distribution(&phi, Outcome::Conclusive(5)),
            Err(Error::MomentumOutOfRange { .. })
        ));
    }

    #[test]
    fn dimension_mismatch_is_rejected() {
        let phi = DickeDiagonalState::canonical(3);
        let povm = PovmSet::build(2).unwrap();
        assert!(matches!(
            povm.outcome_probabilities(&phi),
            Err(Error::DimensionMismatch { .. })
        ));
    }

    #[test]
    fn sampling_is_deterministic_and_prefix_stable() {
        let phi = DickeDiagonalState::canonical(6);
        let povm = PovmSet::build(6).unwrap();
        let a = povm.sample(&phi, 42, 100).unwrap();
        let b = povm.sample(&phi, 42, 100).unwrap();
        assert_eq!(a, b);
        // Substreams are keyed by shot index: a shorter run is a prefix.
        let c = povm.sample(&phi, 42, 17).unwrap();
        assert_eq!(&a[..17], &c[..]);
        // A different seed decorrelates.
        let d = povm.sample(&phi, 43, 100).unwrap();
        assert_ne!(a, d);
        // Zero shots is an empty record set, not an error.
        assert!(povm.sample(&phi, 1, 0).unwrap().is_empty());
    }

    #[test]
    fn sampled_records_live_on_the_lattice() {
        let t = 6usize;
        let phi = DickeDiagonalState::canonical(t);
        let povm = PovmSet::build(t).unwrap();
        for rec in povm.sample(&phi, 7, 2000).unwrap() {
            assert!(rec.position.abs() <= t as i64);
            assert_eq!((rec.position + t as i64) % 2, 0, "parity");
            if let Outcome::Conclusive(m) = rec.outcome {
                assert!(m <= t);
            }
            if rec.outcome == Outcome::Inconclusive {
                assert!(rec.position.unsigned_abs() < t as u64, "r(±T) = 0");
            }
        }
    }

    #[test]
    fn empirical_success_rate_tracks_the_analytic_value() {
        let t = 6usize;
        let shots = 20_000;
        let phi = DickeDiagonalState::canonical(t);
        let povm = PovmSet::build(t).unwrap();
        let records = povm.sample(&phi, 2024, shots).unwrap();
        let conclusive = records
            .iter()
            .filter(|r| matches!(r.outcome, Outcome::Conclusive(_)))
            .count();
        let p = success_probability(t);
        let se = (p * (1.0 - p) / shots as f64).sqrt();
        let diff = (conclusive as f64 / shots as f64 - p).abs();
        assert!(
            diff <= 4.0 * se,
            "empirical {conclusive} of {shots}, diff {diff}"
        );
    }

    proptest! {
        #[test]
        fn outcome_probabilities_form_a_distribution(t in 1usize..16, raw in prop::collection::vec((-1.0f64..1.0, -1.0f64..1.0), 17)) {
            let pairs = &raw[..=t];
            let norm_sqr: f64 = pairs.iter().map(|(re, im)| re * re + im * im).sum();
            prop_assume!(norm_sqr > 1e-3);
            let n = norm_sqr.sqrt();
            let beta: Vec<Complex64> = pairs.iter().map(|(re, im)| Complex64::new(re / n, im / n)).collect();
            let state = DickeDiagonalState::new(t, beta).unwrap();
            let povm = PovmSet::build(t).unwrap();
            let probs = povm.outcome_probabilities(&state).unwrap();
            for &p in &probs {
                prop_assert!(p >= 0.0);
            }
            let total: f64 = probs.iter().sum();
            prop_assert!((total - 1.0).abs() <= TOL);
            // Mixing the post-measurement distributions with the outcome
            // probabilities restores the spatial marginal.
            let marginal = state.spatial_marginal().unwrap();
            for k in 0..=t {
                let mut mix = 0.0;
                for (oi, &p) in probs.iter().enumerate() {
                    if p <= 0.0 {
                        continue;
                    }
                    let o = if oi <= t { Outcome::Conclusive(oi) } else { Outcome::Inconclusive };
                    mix += p * povm.post_measurement_distribution(&state, o).unwrap().weight(k);
                }
                prop_assert!((mix - marginal.weight(k)).abs() <= TOL);
            }
        }
    }
}
