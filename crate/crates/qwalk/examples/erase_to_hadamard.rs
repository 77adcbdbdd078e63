//! Erasing which-way information turns the binomial into the Hadamard walk.
//!
//! The multi-coin walk's position marginal is classical because the T coin
//! qubits remember every left/right choice. Projecting the coin register
//! onto a single state |π⟩ = Σ_k α_k|Γ_k⟩ erases that record coherently and
//! steers the surviving walker to p(x = 2k-T) ∝ γ_k²|α_k|². Choosing the
//! α_k by inverting that relation against the single-coin Hadamard-walk
//! distribution reproduces the quantum walk exactly — at the price of a
//! success probability 𝒩_T < 1; the complementary outcome leaves the
//! failure distribution, and the two branches reassemble the binomial.
//!
//! ```text
//! cargo run --example erase_to_hadamard
//! ```

use qwalk::{hadamard_closed_form, pi_state, CoinInit, DickeDiagonalState};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = 5;
    let init = CoinInit::Symmetric;

    let target = hadamard_closed_form(t, init);
    let projector = pi_state(t, init);
    let state = DickeDiagonalState::canonical(t);

    println!("projective erasure at T = {t}, symmetric walk target");
    println!(
        "success probability 𝒩 = {:.10}   (5/36 = {:.10})",
        projector.success_prob(),
        5.0 / 36.0
    );
    println!();

    println!("projector direction, |α_k| relative to the edges:");
    let alpha0 = projector.alpha()[0].norm();
    for (k, a) in projector.alpha().iter().enumerate() {
        println!("  k = {k}: |α_k|/|α_0| = {:.6}", a.norm() / alpha0);
    }
    println!();

    let marginal = state.spatial_marginal()?;
    let succeeded = projector.conditional_distribution(&state)?;
    let failed = projector.complement_distribution(&state)?;

    println!(
        "{:>4}  {:>10}  {:>10}  {:>10}  {:>10}",
        "x", "binomial", "erased", "target", "failure"
    );
    for k in 0..=t {
        println!(
            "{:>4}  {:>10.6}  {:>10.6}  {:>10.6}  {:>10.6}",
            marginal.position(k),
            marginal.weight(k),
            succeeded.weight(k),
            target.weight(k),
            failed.weight(k),
        );
    }
    println!();

    // No information is created or destroyed: averaging the two branches by
    // their probabilities restores the classical marginal.
    let p = projector.success_prob();
    let max_dev = (0..=t)
        .map(|k| {
            let mix = p * succeeded.weight(k) + (1.0 - p) * failed.weight(k);
            (mix - marginal.weight(k)).abs()
        })
        .fold(0.0f64, f64::max);
    println!("max |𝒩·erased + (1-𝒩)·failure - binomial| = {max_dev:.3e}");
    Ok(())
}
