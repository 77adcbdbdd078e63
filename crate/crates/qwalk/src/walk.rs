//! Single-coin discrete-time walk on the line.
//!
//! State: sum over (x, c) of amplitude |x> ⊗ |c> with a two-level coin.
//! One step applies the Hadamard coin H = (1/√2)[[1, 1], [1, -1]] and then
//! the conditional shift S|x, c> = |x + (-1)^c, c>.
//!
//! Sign convention, used everywhere in this crate: coin 0 steps right
//! (x -> x+1), coin 1 steps left (x -> x-1).

use num_complex::Complex64;

use crate::dist::ProbabilityDistribution;
use crate::error::{Error, Result};
use crate::numerics::{binomial_u128, LnFactorials};

/// Exponential-cost path enumeration is capped here.
pub const PATH_SUM_MAX_STEPS: usize = 20;

const FRAC_1_SQRT_2: f64 = std::f64::consts::FRAC_1_SQRT_2;

/// Initial coin state at the origin.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CoinInit {
    /// |0>
    Zero,
    /// |1>
    One,
    /// (|0> + i|1>)/√2, which keeps the walk left-right symmetric.
    Symmetric,
}

impl CoinInit {
    /// Coin amplitudes (a_0, a_1).
    pub fn amplitudes(&self) -> [Complex64; 2] {
        match self {
            CoinInit::Zero => [Complex64::new(1.0, 0.0), Complex64::new(0.0, 0.0)],
            CoinInit::One => [Complex64::new(0.0, 0.0), Complex64::new(1.0, 0.0)],
            CoinInit::Symmetric => [
                Complex64::new(FRAC_1_SQRT_2, 0.0),
                Complex64::new(0.0, FRAC_1_SQRT_2),
            ],
        }
    }

    pub fn label(&self) -> &'static str {
        match self {
            CoinInit::Zero => "zero",
            CoinInit::One => "one",
            CoinInit::Symmetric => "symmetric",
        }
    }
}

impl std::str::FromStr for CoinInit {
    type Err = String;

    fn from_str(s: &str) -> std::result::Result<Self, Self::Err> {
        match s {
            "zero" => Ok(CoinInit::Zero),
            "one" => Ok(CoinInit::One),
            "symmetric" => Ok(CoinInit::Symmetric),
            other => Err(format!(
                "unknown coin init '{other}' (expected zero, one, or symmetric)"
            )),
        }
    }
}

/// Walker + coin state on a dense grid x in [-half_width, +half_width].
///
/// Amplitudes are stored per (position, coin) cell; the grid is allocated
/// once so that T steps from the origin never reallocate.
#[derive(Debug, Clone)]
pub struct WalkState {
    half_width: usize,
    steps: usize,
    /// Index: (x + half_width) * 2 + c.
    amps: Vec<Complex64>,
}

impl WalkState {
    /// Walker at the origin with the given coin state, on a grid wide enough
    /// for `half_width` steps.
    pub fn new(half_width: usize, init: CoinInit) -> Self {
        let mut amps = vec![Complex64::new(0.0, 0.0); (2 * half_width + 1) * 2];
        let [a0, a1] = init.amplitudes();
        amps[2 * half_width] = a0;
        amps[2 * half_width + 1] = a1;
        WalkState {
            half_width,
            steps: 0,
            amps,
        }
    }

    /// Arbitrary state from (position, coin, amplitude) triples. `steps`
    /// records how many shifts produced it (it fixes the lattice parity for
    /// [`dtqw_distribution`]). Positions must fit the grid; coins are 0 or 1.
    pub fn from_amplitudes(
        half_width: usize,
        steps: usize,
        entries: &[(i64, usize, Complex64)],
    ) -> Result<Self> {
        let mut amps = vec![Complex64::new(0.0, 0.0); (2 * half_width + 1) * 2];
        for &(x, c, a) in entries {
            if x.unsigned_abs() as usize > half_width || c > 1 {
                return Err(Error::GridExhausted { half_width });
            }
            amps[((x + half_width as i64) as usize) * 2 + c] += a;
        }
        Ok(WalkState {
            half_width,
            steps,
            amps,
        })
    }

    pub fn half_width(&self) -> usize {
        self.half_width
    }

    /// Number of shifts applied so far.
    pub fn steps_so_far(&self) -> usize {
        self.steps
    }

    pub fn amplitude(&self, x: i64, coin: usize) -> Complex64 {
        debug_assert!(coin < 2);
        if x.unsigned_abs() as usize > self.half_width {
            return Complex64::new(0.0, 0.0);
        }
        self.amps[((x + self.half_width as i64) as usize) * 2 + coin]
    }

    pub fn norm_sqr(&self) -> f64 {
        self.amps.iter().map(|a| a.norm_sqr()).sum()
    }

    /// Applies H to the coin at every site: (a, b) -> ((a+b)/√2, (a-b)/√2).
    pub fn hadamard_coin(&self) -> Self {
        let mut out = self.clone();
        for cell in out.amps.chunks_exact_mut(2) {
            let (a, b) = (cell[0], cell[1]);
            cell[0] = (a + b) * FRAC_1_SQRT_2;
            cell[1] = (a - b) * FRAC_1_SQRT_2;
        }
        out
    }

    /// Coin-conditioned shift: coin 0 moves +1, coin 1 moves -1. Errors if
    /// nonzero amplitude would leave the grid.
    pub fn shift(&self) -> Result<Self> {
        let w = self.half_width as i64;
        let zero = Complex64::new(0.0, 0.0);
        if self.amplitude(w, 0) != zero || self.amplitude(-w, 1) != zero {
            return Err(Error::GridExhausted {
                half_width: self.half_width,
            });
        }
        let mut amps = vec![zero; self.amps.len()];
        for x in -w..=w {
            let a0 = self.amplitude(x, 0);
            if a0 != zero {
                amps[((x + 1 + w) as usize) * 2] = a0;
            }
            let a1 = self.amplitude(x, 1);
            if a1 != zero {
                amps[((x - 1 + w) as usize) * 2 + 1] = a1;
            }
        }
        Ok(WalkState {
            half_width: self.half_width,
            steps: self.steps + 1,
            amps,
        })
    }

    /// One full walk step: Hadamard coin, then shift.
    pub fn step(&self) -> Result<Self> {
        self.hadamard_coin().shift()
    }
}

/// Runs T steps of the Hadamard walk from the origin.
pub fn dtqw_evolve(steps: usize, init: CoinInit) -> WalkState {
    let mut state = WalkState::new(steps, init);
    for _ in 0..steps {
        state = state.step().expect("grid is sized for exactly T steps");
    }
    state
}

/// Position distribution of a state after T = steps_so_far shifts, traced
/// over the coin. Only the reachable lattice x = 2k - T is read; a state
/// with off-lattice amplitude will fail the normalization check.
pub fn dtqw_distribution(state: &WalkState) -> Result<ProbabilityDistribution> {
    let t = state.steps_so_far();
    let weights = (0..=t)
        .map(|k| {
            let x = 2 * k as i64 - t as i64;
            state.amplitude(x, 0).norm_sqr() + state.amplitude(x, 1).norm_sqr()
        })
        .collect();
    ProbabilityDistribution::new(t, weights)
}

/// Independent check on the evolution: sums the amplitude of every coin
/// history explicitly. A history is the coin value after each of the T
/// Hadamards; its amplitude is the product of coin-flip matrix elements
/// H[c_t, c_{t-1}] = (-1)^(c_t c_{t-1})/√2 over the steps, weighted by the
/// initial coin amplitude a_{c_0}. Histories meeting at the same
/// (position, final coin) interfere. Cost 2^T, capped at
/// [`PATH_SUM_MAX_STEPS`].
pub fn path_sum_oracle(steps: usize, init: CoinInit) -> Result<ProbabilityDistribution> {
    if steps > PATH_SUM_MAX_STEPS {
        return Err(Error::StepCapExceeded {
            what: "path-sum enumeration",
            requested: steps,
            max: PATH_SUM_MAX_STEPS,
        });
    }
    let t = steps;
    let [a0, a1] = init.amplitudes();
    // Bucket amplitudes by (k, final coin), k = (x + T)/2.
    let mut buckets = vec![Complex64::new(0.0, 0.0); (t + 1) * 2];
    let scale = (0.5f64).powi(t as i32).sqrt(); // (1/√2)^T
    for path in 0u64..(1u64 << t) {
        // Bit i of `path` is the coin value after Hadamard i+1.
        let rights = t - (path.count_ones() as usize); // coins equal to 0
        let k = rights; // x = 2k - T
        let final_coin = if t == 0 {
            0
        } else {
            ((path >> (t - 1)) & 1) as usize
        };
        // Sign from consecutive-coin products: (-1)^(sum c_t * c_{t-1}).
        let sign_bits = (path & (path >> 1)).count_ones();
        for (c0, a_init) in [(0u64, a0), (1u64, a1)] {
            if a_init == Complex64::new(0.0, 0.0) {
                continue;
            }
            let extra = if t > 0 { (path & c0) & 1 } else { 0 };
            let parity = (sign_bits + extra as u32) & 1;
            let sign = if parity == 0 { 1.0 } else { -1.0 };
            let idx = if t == 0 { c0 as usize } else { final_coin };
            buckets[k * 2 + idx] += a_init * sign * scale;
        }
    }
    let weights = (0..=t)
        .map(|k| buckets[k * 2].norm_sqr() + buckets[k * 2 + 1].norm_sqr())
        .collect();
    ProbabilityDistribution::new(t, weights)
}

/// Binomial distribution of the classical random walk: the walker that is
/// measured after every step. p(x = 2k - T) = C(T, k) 2^-T, so the standard
/// deviation is exactly √T.
pub fn classical_distribution(steps: usize) -> ProbabilityDistribution {
    let t = steps;
    let scale = (-(t as f64)).exp2();
    let weights: Vec<f64> = match binomial_u128(t, t / 2) {
        Some(_) => (0..=t)
            .map(|k| binomial_u128(t, k).expect("within exact range") as f64 * scale)
            .collect(),
        None => {
            let lnfac = LnFactorials::up_to(t);
            let ln2 = std::f64::consts::LN_2;
            (0..=t)
                .map(|k| (lnfac.ln_binomial(t, k) - t as f64 * ln2).exp())
                .collect()
        }
    };
    ProbabilityDistribution::new(t, weights).expect("binomial weights are normalized")
}
