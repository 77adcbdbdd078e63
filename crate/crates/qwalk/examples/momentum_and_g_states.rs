//! Momentum states and the coin states |G_m⟩ riding along with them.
//!
//! On the T+1 occupied sites x = 2k - T, the discrete momentum basis is
//! |m⟩ = (T+1)^{-1/2} Σ_k e^{-i2πkm/(T+1)} |2k-T⟩. Expanding the multi-coin
//! walk state over it pairs each |m⟩ with a normalized coin state
//! |G_m⟩ = Σ_k γ_k e^{i2πkm/(T+1)} |Γ_k⟩. Two facts matter downstream:
//!
//! 1. The |G_m⟩ are *not* orthogonal — discriminating them is the whole
//!    difficulty of erasing which-way information toward a momentum state.
//! 2. Advancing the walk n more steps only rotates the family in a circle:
//!    multiplying component k by e^{i2πkn/(T+1)} sends G_m to G_{m+n mod T+1}.
//!
//! ```text
//! cargo run --example momentum_and_g_states
//! ```

use std::f64::consts::TAU;

use num_complex::Complex64;
use qwalk::{cyclic_shift, g_state, DickeDiagonalState};

fn overlap(a: &[Complex64], b: &[Complex64]) -> Complex64 {
    a.iter().zip(b).map(|(x, y)| x.conj() * y).sum()
}

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = 5;
    let modulus = t + 1;

    // A walker prepared in momentum state |m⟩ has position amplitudes
    // e^{-i2πkm/(T+1)}/√(T+1); the momentum decomposition recovers the
    // point mass. This flat profile is what the erasure POVM aims for.
    let target_m = 2;
    let l = modulus as f64;
    let beta: Vec<Complex64> = (0..modulus)
        .map(|k| Complex64::from_polar(l.sqrt().recip(), -TAU * (k * target_m) as f64 / l))
        .collect();
    let walker = DickeDiagonalState::new(t, beta)?;
    println!("momentum content of a walker prepared in |m = {target_m}⟩ at T = {t}:");
    for (m, amp) in walker.momentum_amplitudes().iter().enumerate() {
        println!("  |⟨m={m}|ψ⟩| = {:.6}", amp.norm());
    }
    println!();

    // Pairwise overlaps |⟨G_m|G_n⟩|: far from the identity matrix.
    let g: Vec<Vec<Complex64>> = (0..modulus)
        .map(|m| g_state(t, m))
        .collect::<Result<_, _>>()?;
    println!("|⟨G_m|G_n⟩| for m,n = 0..{t}:");
    for row in &g {
        let cells: Vec<String> = g
            .iter()
            .map(|col| format!("{:.3}", overlap(row, col).norm()))
            .collect();
        println!("  [{}]", cells.join("  "));
    }
    println!("non-orthogonal: no projective coin measurement can tell them apart.");
    println!();

    // Walking n further steps cycles the family: shift(G_m, n) = G_{m+n}.
    let m = 2;
    let n = 3;
    let shifted = cyclic_shift(&g[m], n as i64);
    let expected = &g[(m + n) % modulus];
    let dev = shifted
        .iter()
        .zip(expected)
        .map(|(a, b)| (a - b).norm())
        .fold(0.0f64, f64::max);
    println!(
        "‖shift(G_{m}, {n}) - G_{}‖_∞ = {dev:.3e}",
        (m + n) % modulus
    );
    println!("so later steps relabel the momenta instead of degrading them.");
    Ok(())
}
