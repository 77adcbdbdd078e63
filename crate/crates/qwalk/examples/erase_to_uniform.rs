//! The optimal POVM: erasing toward a momentum state.
//!
//! A single projection cannot reach the flat (momentum-state) walker
//! distribution with the best possible odds. The optimal instrument is a
//! POVM with T+2 elements: T+1 "conclusive" elements η|G̃_m⟩⟨G̃_m| built on
//! the reciprocal states ⟨G̃_m|G_n⟩ = (T+1)δ_{mn}, plus one "inconclusive"
//! remainder Π_?. On the multi-coin walk state every conclusive outcome
//! fires with probability 2^-T and collapses the walker to exactly uniform
//! over the T+1 sites; the total success (T+1)2^-T saturates the
//! unambiguous-discrimination bound min_x p(x)·(T+1).
//!
//! ```text
//! cargo run --example erase_to_uniform
//! ```

use qwalk::{success_probability, DickeDiagonalState, Outcome, PovmSet};

fn main() -> Result<(), Box<dyn std::error::Error>> {
    let t = 6;
    let povm = PovmSet::build(t)?;
    let state = DickeDiagonalState::canonical(t);

    println!("momentum-erasure POVM at T = {t}");
    println!(
        "  η              = {:.10}  (2^-T/(T+1) = {:.10})",
        povm.eta(),
        0.5f64.powi(t as i32) / (t as f64 + 1.0)
    );
    println!(
        "  P(success)     = {:.10}  ((T+1)·2^-T = 7/64 = {:.10})",
        success_probability(t),
        7.0 / 64.0
    );
    println!();

    let probs = povm.outcome_probabilities(&state)?;
    println!("outcome probabilities on the walk state:");
    for (m, p) in probs[..=t].iter().enumerate() {
        println!(
            "  P(m = {m})  = {p:.10}   (2^-T = {:.10})",
            0.5f64.powi(t as i32)
        );
    }
    println!("  P(fail)   = {:.10}", probs[t + 1]);
    println!();

    let uniform = povm.post_measurement_distribution(&state, Outcome::Conclusive(0))?;
    let failure = povm.post_measurement_distribution(&state, Outcome::Inconclusive)?;
    let marginal = state.spatial_marginal()?;
    println!(
        "{:>4}  {:>10}  {:>12}  {:>10}",
        "x", "binomial", "conclusive", "failure"
    );
    for k in 0..=t {
        println!(
            "{:>4}  {:>10.6}  {:>12.6}  {:>10.6}",
            marginal.position(k),
            marginal.weight(k),
            uniform.weight(k),
            failure.weight(k),
        );
    }
    println!();
    println!("conclusive column: exactly 1/(T+1) = 1/7 everywhere — a pure momentum state.");
    println!("failure column: the edges x = ±T vanish, because C(T,0) = C(T,T) = 1 makes");
    println!("those sites' coin state certain, so they always convert.");
    Ok(())
}
