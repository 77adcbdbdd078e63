//! Acceptance gate: eight end-to-end criteria covering the walk simulator,
//! the closed form, projective erasure, the momentum-erasure POVM, sampling,
//! and the ballistic/diffusive scaling split.
//!
//! Each criterion prints exactly one `ACCEPTANCE n PASS/FAIL` line; run with
//! `cargo test --test acceptance -- --nocapture` to see them on success.

use std::panic::{catch_unwind, UnwindSafe};
use std::time::Instant;

use qwalk::{
    brute_force_mcqw, classical_distribution, compress, dtqw_distribution, dtqw_evolve, g_state,
    g_tilde, hadamard_closed_form, optimal_eta, path_sum_oracle, pi_state, success_probability,
    CoinInit, DickeDiagonalState, Outcome, PovmSet,
};

const INITS: [CoinInit; 3] = [CoinInit::Zero, CoinInit::One, CoinInit::Symmetric];

fn criterion(n: usize, name: &str, body: impl FnOnce() -> String + UnwindSafe) {
    match catch_unwind(body) {
        Ok(detail) => println!("ACCEPTANCE {n} PASS: {name} ({detail})"),
        Err(_) => {
            println!("ACCEPTANCE {n} FAIL: {name}");
            panic!("acceptance criterion {n} failed: {name}");
        }
    }
}

#[test]
fn criterion_1_closed_form_matches_simulation() {
    criterion(
        1,
        "closed-form walk distribution matches step-by-step simulation, T = 1..=25, every coin seed",
        || {
            let start = Instant::now();
            let mut max_dev = 0.0f64;
            for t in 1..=25 {
                for init in INITS {
                    let simulated = dtqw_distribution(&dtqw_evolve(t, init)).unwrap();
                    let closed = hadamard_closed_form(t, init);
                    for k in 0..=t {
                        let dev = (simulated.weight(k) - closed.weight(k)).abs();
                        max_dev = max_dev.max(dev);
                        assert!(dev < 1e-12, "T={t} {init:?} k={k}: dev {dev:.3e}");
                    }
                }
            }
            let elapsed = start.elapsed();
            assert!(elapsed.as_secs_f64() < 5.0, "took {elapsed:.2?}");
            format!("max deviation {max_dev:.2e}, {elapsed:.2?}")
        },
    );
}

#[test]
fn criterion_2_erasure_goldens() {
    criterion(
        2,
        "erasure golden values: success 5/36 and edge-relative direction at T = 5, success 1/2 at T = 1",
        || {
            let tol = 1e-12;
            let projector = pi_state(5, CoinInit::Symmetric);
            assert!((projector.success_prob() - 5.0 / 36.0).abs() < tol);
            let alpha = projector.alpha();
            let expected = [
                1.0,
                (11.0f64 / 5.0).sqrt(),
                (2.0f64 / 5.0).sqrt(),
                (2.0f64 / 5.0).sqrt(),
                (11.0f64 / 5.0).sqrt(),
                1.0,
            ];
            for (k, want) in expected.iter().enumerate() {
                let ratio = alpha[k].norm() / alpha[0].norm();
                assert!((ratio - want).abs() < tol, "k={k}: {ratio} vs {want}");
            }
            let unit = pi_state(1, CoinInit::Symmetric);
            assert!((unit.success_prob() - 0.5).abs() < tol);
            format!("N_5 = 5/36, direction ratios, N_1 = 1/2, all within {tol:.0e}")
        },
    );
}

#[test]
fn criterion_3_erasure_round_trip() {
    criterion(
        3,
        "erasure round trip: post-selection reproduces the walk target and branches remix to the binomial, T in {2,5,10,25}",
        || {
            let mut max_tv = 0.0f64;
            for t in [2usize, 5, 10, 25] {
                for init in INITS {
                    let target = hadamard_closed_form(t, init);
                    let projector = pi_state(t, init);
                    let state = DickeDiagonalState::canonical(t);
                    let conditional = projector.conditional_distribution(&state).unwrap();
                    let tv = conditional.total_variation(&target).unwrap();
                    max_tv = max_tv.max(tv);
                    assert!(tv < 1e-12, "T={t} {init:?}: TV {tv:.3e}");

                    let failure = projector.complement_distribution(&state).unwrap();
                    let marginal = state.spatial_marginal().unwrap();
                    let p = projector.success_prob();
                    for k in 0..=t {
                        let mix =
                            p * conditional.weight(k) + (1.0 - p) * failure.weight(k);
                        assert!(
                            (mix - marginal.weight(k)).abs() < 1e-12,
                            "T={t} {init:?} k={k}: mixture broken"
                        );
                    }
                }
            }
            format!("max TV {max_tv:.2e}, mixture identity pointwise < 1e-12")
        },
    );
}

#[test]
fn criterion_4_povm_suite() {
    criterion(
        4,
        "POVM suite for T = 1..=30: η, reciprocal-state biorthogonality, completeness, flat outcome law, success identities",
        || {
            for t in 1..=30usize {
                let l = (t + 1) as f64;
                let povm = PovmSet::build(t).unwrap();
                assert!((povm.eta() - (-(t as f64)).exp2() / l).abs() <= 1e-12 * povm.eta());
                assert!((optimal_eta(t) - povm.eta()).abs() <= f64::EPSILON * povm.eta());

                // ⟨G̃_m|G_n⟩ = (T+1) δ_mn, checked relative to T+1.
                for m in 0..=t {
                    let gt = g_tilde(t, m).unwrap();
                    for n in 0..=t {
                        let g = g_state(t, n).unwrap();
                        let inner: num_complex::Complex64 =
                            gt.iter().zip(&g).map(|(a, b)| a.conj() * b).sum();
                        let want = if m == n { l } else { 0.0 };
                        assert!(
                            (inner - want).norm() <= 1e-9 * l,
                            "T={t} m={m} n={n}: {inner}"
                        );
                    }
                }

                // η Σ_m |G̃_m⟩⟨G̃_m| + Π_? = 𝟙 entrywise in the Dicke basis.
                for r in 0..=t {
                    for c in 0..=t {
                        let mut sum = num_complex::Complex64::new(0.0, 0.0);
                        for m in 0..=t {
                            let gt = g_tilde(t, m).unwrap();
                            sum += gt[r] * gt[c].conj() * povm.eta();
                        }
                        if r == c {
                            sum += povm.pi_fail_diag()[r];
                        }
                        let want = if r == c { 1.0 } else { 0.0 };
                        assert!(
                            (sum - want).norm() <= 1e-12 * l,
                            "T={t} ({r},{c}): completeness off by {:.3e}",
                            (sum - want).norm()
                        );
                    }
                }

                // Flat conclusive outcome law and both success identities.
                let state = DickeDiagonalState::canonical(t);
                let probs = povm.outcome_probabilities(&state).unwrap();
                let each = (-(t as f64)).exp2();
                for (m, p) in probs.iter().take(t + 1).enumerate() {
                    assert!((p / each - 1.0).abs() <= 1e-12, "T={t} m={m}");
                }
                let success = success_probability(t);
                assert!((success - l * each).abs() <= 1e-12 * success);
                let min_p = state
                    .spatial_marginal()
                    .unwrap()
                    .weights()
                    .iter()
                    .cloned()
                    .fold(f64::INFINITY, f64::min);
                assert!((success - min_p * l).abs() <= 1e-12 * success);
                let total: f64 = probs.iter().sum();
                assert!((total - 1.0).abs() <= 1e-12);
            }
            "η, biorthogonality (1e-9 rel), completeness (1e-12), P(m) = 2^-T, P_success = (T+1)2^-T = (T+1)·min p(x)".to_string()
        },
    );
}

#[test]
fn criterion_5_collapse_exactness_t6() {
    criterion(
        5,
        "post-measurement exactness at T = 6: flat conclusive branch, edge-free failure branch, exact remix",
        || {
            let t = 6;
            let povm = PovmSet::build(t).unwrap();
            let state = DickeDiagonalState::canonical(t);
            for m in 0..=t {
                let dist = povm
                    .post_measurement_distribution(&state, Outcome::Conclusive(m))
                    .unwrap();
                for k in 0..=t {
                    assert!((dist.weight(k) - 1.0 / 7.0).abs() < 1e-12, "m={m} k={k}");
                }
            }
            let failure = povm
                .post_measurement_distribution(&state, Outcome::Inconclusive)
                .unwrap();
            assert_eq!(failure.weight(0), 0.0, "x = -6 must be impossible");
            assert_eq!(failure.weight(t), 0.0, "x = +6 must be impossible");

            let marginal = state.spatial_marginal().unwrap();
            let p = success_probability(t);
            let uniform = povm
                .post_measurement_distribution(&state, Outcome::Conclusive(0))
                .unwrap();
            for k in 0..=t {
                let mix = p * uniform.weight(k) + (1.0 - p) * failure.weight(k);
                assert!((mix - marginal.weight(k)).abs() < 1e-12, "k={k}");
            }
            "uniform 1/7 per conclusive outcome, failure(±6) = 0 exactly, remix < 1e-12".to_string()
        },
    );
}

#[test]
fn criterion_6_path_sum_oracle_equivalence() {
    criterion(
        6,
        "independent oracles for T = 0..=14: path sum matches the evolution, brute-forced multi-coin walk compresses to the canonical state",
        || {
            let start = Instant::now();
            let mut max_dev = 0.0f64;
            for t in 0..=14usize {
                for init in INITS {
                    let oracle = path_sum_oracle(t, init).unwrap();
                    let evolved = dtqw_distribution(&dtqw_evolve(t, init)).unwrap();
                    for k in 0..=t {
                        let dev = (oracle.weight(k) - evolved.weight(k)).abs();
                        max_dev = max_dev.max(dev);
                        assert!(dev < 1e-12, "T={t} {init:?} k={k}: dev {dev:.3e}");
                    }
                }

                let (compressed, residual) = compress(&brute_force_mcqw(t).unwrap());
                assert!(residual < 1e-12, "T={t}: residual {residual:.3e}");
                let canonical = DickeDiagonalState::canonical(t);
                for (k, (b, c)) in compressed
                    .beta()
                    .iter()
                    .zip(canonical.beta())
                    .enumerate()
                {
                    let dev = (b - c).norm();
                    max_dev = max_dev.max(dev);
                    assert!(dev < 1e-12, "T={t} k={k}: compression dev {dev:.3e}");
                }
            }
            let elapsed = start.elapsed();
            assert!(elapsed.as_secs_f64() < 30.0, "took {elapsed:.2?}");
            format!("max deviation {max_dev:.2e} across both oracles, {elapsed:.2?}")
        },
    );
}

#[test]
fn criterion_7_monte_carlo_statistics() {
    criterion(
        7,
        "Monte Carlo at T = 6: success rate within 3 SE of 7/64 and flat conclusive positions (χ², df 6, 0.1% level)",
        || {
            let start = Instant::now();
            let (t, seed, shots) = (6usize, 42u64, 100_000usize);
            let povm = PovmSet::build(t).unwrap();
            let state = DickeDiagonalState::canonical(t);
            let records = povm.sample(&state, seed, shots).unwrap();

            let p = 7.0 / 64.0;
            let se = (p * (1.0 - p) / shots as f64).sqrt();
            let conclusive: Vec<i64> = records
                .iter()
                .filter(|r| matches!(r.outcome, Outcome::Conclusive(_)))
                .map(|r| r.position)
                .collect();
            let p_hat = conclusive.len() as f64 / shots as f64;
            assert!(
                (p_hat - p).abs() <= 3.0 * se,
                "empirical {p_hat} vs {p} (3 SE = {:.2e})",
                3.0 * se
            );

            let mut counts = [0f64; 7];
            for x in &conclusive {
                let k = ((x + t as i64) / 2) as usize;
                counts[k] += 1.0;
            }
            let expected = conclusive.len() as f64 / 7.0;
            let chi_sqr: f64 = counts
                .iter()
                .map(|c| (c - expected).powi(2) / expected)
                .sum();
            assert!(chi_sqr < 22.458, "χ² = {chi_sqr:.2} ≥ 22.458");

            let elapsed = start.elapsed();
            assert!(elapsed.as_secs_f64() < 10.0, "took {elapsed:.2?}");
            format!(
                "success {p_hat:.5} ({:+.2} SE), χ² = {chi_sqr:.2} < 22.458, {elapsed:.2?}",
                (p_hat - p) / se
            )
        },
    );
}

#[test]
fn criterion_8_ballistic_vs_diffusive_scaling() {
    criterion(
        8,
        "doubling T doubles the quantum width but multiplies the classical width by √2",
        || {
            let sigma_q = |t| {
                dtqw_distribution(&dtqw_evolve(t, CoinInit::Symmetric))
                    .unwrap()
                    .std_dev()
            };
            let quantum_ratio = sigma_q(200) / sigma_q(100);
            assert!(
                (1.9..=2.1).contains(&quantum_ratio),
                "quantum ratio {quantum_ratio}"
            );
            let classical_ratio =
                classical_distribution(200).std_dev() / classical_distribution(100).std_dev();
            assert!(
                (classical_ratio - 2.0f64.sqrt()).abs() < 1e-12,
                "classical ratio {classical_ratio}"
            );
            format!("quantum σ ratio {quantum_ratio:.4}, classical σ ratio {classical_ratio:.12}")
        },
    );
}
