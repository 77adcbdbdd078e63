//! The multi-coin walk never leaves the Dicke-diagonal subspace.
//!
//! A walker that uses a fresh Hadamard coin every step records which-way
//! information in T coin qubits, and its position marginal stays the
//! classical binomial. Because each position x = 2k - T is reached by
//! exactly the histories with k right-moves, the 2^T-dimensional coin
//! register only ever holds the symmetric (Dicke) combination |Γ_k⟩ next to
//! site 2k - T. This example brute-forces all 2^T coin histories and then
//! compresses the state onto the (T+1)-dimensional Dicke-diagonal basis,
//! showing that nothing is lost.
//!
//! ```text
//! cargo run --example multicoin_compression
//! ```

use num_complex::Complex64;
use qwalk::{
    brute_force_mcqw, classical_distribution, compress, gamma_coefficients, FullMulticoinState,
};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = 10;
    let full = brute_force_mcqw(t)?;
    println!(
        "brute-forced multi-coin walk at T = {t}: {} coin amplitudes",
        1usize << t
    );

    let (state, residual) = compress(&full);
    println!("residual outside the Dicke-diagonal subspace: {residual:.3e}");
    println!();

    // The compressed coefficients are exactly γ_k = √(C(T,k) 2^-T).
    let gamma = gamma_coefficients(t);
    println!("{:>4}  {:>5}  {:>12}  {:>12}", "k", "x", "β_k", "γ_k");
    for (k, (b, g)) in state.beta().iter().zip(&gamma).enumerate() {
        println!(
            "{:>4}  {:>5}  {:>12.8}  {:>12.8}",
            k,
            state.position(k),
            b.re,
            g
        );
    }
    println!();

    // And the spatial marginal is the classical binomial, exactly.
    let marginal = state.spatial_marginal()?;
    let classical = classical_distribution(t);
    let max_dev = (0..=t)
        .map(|k| (marginal.weight(k) - classical.weight(k)).abs())
        .fold(0.0f64, f64::max);
    println!("max |marginal - binomial| over all sites: {max_dev:.3e}");
    println!();

    // A state that privileges one history is *not* Dicke-diagonal: the
    // compression reports the asymmetric remainder in the residual.
    let mut amps = vec![Complex64::new(0.0, 0.0); 1 << 2];
    amps[0b01] = Complex64::new(1.0, 0.0);
    let lopsided = FullMulticoinState::from_amplitudes(2, amps)?;
    let (proj, residual) = compress(&lopsided);
    println!("single-history state at T = 2 (coin word 01):");
    println!("  symmetric part norm² = {:.3}", proj.norm_sqr());
    println!("  residual norm        = {residual:.3}");
    println!("half the weight lies outside the symmetric subspace.");
    Ok(())
}
