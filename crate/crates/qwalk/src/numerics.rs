//! Binomial-coefficient numerics shared across the crate.
//!
//! Three regimes:
//! - exact `u128` binomials while the multiply-then-divide loop cannot
//!   overflow (n <= 120),
//! - log-space via a compensated ln-factorial table for large n,
//! - exact big integers where signed sums would otherwise cancel
//!   catastrophically (closed-form walk amplitudes).

use num_bigint::BigUint;

/// Largest n for which `binomial_u128` is guaranteed not to overflow:
/// the intermediate product C(n, k) * n must fit in u128.
pub const EXACT_BINOMIAL_MAX_N: usize = 120;

/// Table of ln(0!), ln(1!), ..., ln(n!).
///
/// Built with compensated summation so the absolute error stays near one
/// ulp of the entries; good enough that exp(ln C(T, k) - T ln 2) sums to 1
/// within 1e-12 over k for T up to 1024.
pub struct LnFactorials {
    table: Vec<f64>,
}

impl LnFactorials {
    pub fn up_to(n: usize) -> Self {
        let mut table = vec![0.0; n + 1];
        let mut sum = 0.0f64;
        let mut comp = 0.0f64;
        for (i, slot) in table.iter_mut().enumerate().skip(2) {
            let y = (i as f64).ln() - comp;
            let t = sum + y;
            comp = (t - sum) - y;
            sum = t;
            *slot = sum;
        }
        LnFactorials { table }
    }

    pub fn ln_factorial(&self, n: usize) -> f64 {
        self.table[n]
    }

    /// ln C(n, k); n must be within the table.
    pub fn ln_binomial(&self, n: usize, k: usize) -> f64 {
        debug_assert!(k <= n);
        self.table[n] - self.table[k] - self.table[n - k]
    }
}

/// Exact C(n, k), or None if the computation could overflow u128.
pub fn binomial_u128(n: usize, k: usize) -> Option<u128> {
    if k > n {
        return Some(0);
    }
    if n > EXACT_BINOMIAL_MAX_N {
        return None;
    }
    let k = k.min(n - k) as u128;
    let n = n as u128;
    let mut c: u128 = 1;
    for i in 1..=k {
        // Exact at every step: C(n, i-1) * (n - i + 1) is divisible by i.
        c = c * (n - i + 1) / i;
    }
    Some(c)
}

/// C(n, k) as f64: exact integer path when available, log-space otherwise.
pub fn binomial_f64(n: usize, k: usize) -> f64 {
    if k > n {
        return 0.0;
    }
    match binomial_u128(n, k) {
        Some(c) => c as f64,
        None => {
            let lnfac = LnFactorials::up_to(n);
            lnfac.ln_binomial(n, k).exp()
        }
    }
}

/// Row n of Pascal's triangle as exact big integers: [C(n,0), ..., C(n,n)].
pub fn big_binomial_row(n: usize) -> Vec<BigUint> {
    let mut row = Vec::with_capacity(n + 1);
    let mut c = BigUint::from(1u32);
    row.push(c.clone());
    for i in 1..=n {
        c = c * (n - i + 1) / i;
        row.push(c.clone());
    }
    row
}
