//! Probability distributions on the reachable walk lattice.
//!
//! After T steps from the origin the walker can only sit on the T+1 sites
//! x = 2k - T for k = 0..=T (same parity as T). A distribution is stored as
//! those T+1 weights; the positions are implied by (T, k).

use crate::error::{Error, Result};

/// Tolerance used when validating that weights form a distribution.
/// Invariant checks in tests are tighter (1e-12); construction is slightly
/// lenient so long log-space pipelines are not rejected at the boundary.
pub const NORMALIZATION_TOL: f64 = 1e-9;

/// Probability distribution over the lattice x = 2k - T, k = 0..=T.
#[derive(Debug, Clone, PartialEq)]
pub struct ProbabilityDistribution {
    steps: usize,
    weights: Vec<f64>,
}

impl ProbabilityDistribution {
    /// Builds a distribution from weights indexed by k. The weights must be
    /// finite, nonnegative, of length T+1, and sum to 1 within
    /// [`NORMALIZATION_TOL`].
    pub fn new(steps: usize, weights: Vec<f64>) -> Result<Self> {
        if weights.len() != steps + 1 {
            return Err(Error::DimensionMismatch {
                expected: steps + 1,
                actual: weights.len(),
            });
        }
        for (k, &w) in weights.iter().enumerate() {
            if !w.is_finite() || w < 0.0 {
                return Err(Error::InvalidWeights {
                    reason: format!("weight[{k}] = {w}"),
                });
            }
        }
        let sum: f64 = weights.iter().sum();
        if (sum - 1.0).abs() > NORMALIZATION_TOL {
            return Err(Error::InvalidWeights {
                reason: format!("weights sum to {sum}, expected 1"),
            });
        }
        Ok(ProbabilityDistribution { steps, weights })
    }

    /// Normalizes nonnegative weights by their sum. Errors if the total mass
    /// is zero (or not finite).
    pub fn from_unnormalized(steps: usize, weights: Vec<f64>) -> Result<Self> {
        let sum: f64 = weights.iter().sum();
        if !(sum.is_finite() && sum > 0.0) {
            return Err(Error::InvalidWeights {
                reason: format!("total mass {sum}"),
            });
        }
        let scaled = weights.into_iter().map(|w| w / sum).collect();
        Self::new(steps, scaled)
    }

    /// All mass on site k.
    pub fn point_mass(steps: usize, k: usize) -> Self {
        let mut weights = vec![0.0; steps + 1];
        weights[k] = 1.0;
        ProbabilityDistribution { steps, weights }
    }

    pub fn steps(&self) -> usize {
        self.steps
    }

    pub fn weights(&self) -> &[f64] {
        &self.weights
    }

    pub fn weight(&self, k: usize) -> f64 {
        self.weights[k]
    }

    /// Lattice position of site k: x = 2k - T.
    pub fn position(&self, k: usize) -> i64 {
        2 * k as i64 - self.steps as i64
    }

    /// (position, weight) pairs in ascending position order.
    pub fn points(&self) -> impl Iterator<Item = (i64, f64)> + '_ {
        self.weights
            .iter()
            .enumerate()
            .map(|(k, &w)| (self.position(k), w))
    }

    /// Reflection k <-> T-k (equivalently x <-> -x).
    pub fn mirrored(&self) -> Self {
        let mut weights = self.weights.clone();
        weights.reverse();
        ProbabilityDistribution {
            steps: self.steps,
            weights,
        }
    }

    pub fn mean(&self) -> f64 {
        self.points().map(|(x, w)| w * x as f64).sum()
    }

    /// Standard deviation of the position. Two-pass for stability.
    pub fn std_dev(&self) -> f64 {
        let mu = self.mean();
        let var: f64 = self
            .points()
            .map(|(x, w)| {
                let d = x as f64 - mu;
                w * d * d
            })
            .sum();
        var.max(0.0).sqrt()
    }

    /// Total variation distance (1/2) sum_k |a_k - b_k|. Both distributions
    /// must live on the same lattice.
    pub fn total_variation(&self, other: &Self) -> Result<f64> {
        if self.steps != other.steps {
            return Err(Error::DimensionMismatch {
                expected: self.steps + 1,
                actual: other.steps + 1,
            });
        }
        let sum: f64 = self
            .weights
            .iter()
            .zip(&other.weights)
            .map(|(a, b)| (a - b).abs())
            .sum();
        Ok(0.5 * sum)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_wrong_length() {
        let err = ProbabilityDistribution::new(2, vec![0.5, 0.5]).unwrap_err();
        assert_eq!(
            err,
            Error::DimensionMismatch {
                expected: 3,
                actual: 2
            }
        );
    }

    #[test]
    fn rejects_negative_and_unnormalized() {
        assert!(ProbabilityDistribution::new(1, vec![1.5, -0.5]).is_err());
        assert!(ProbabilityDistribution::new(1, vec![0.6, 0.6]).is_err());
    }

    #[test]
    fn positions_span_reachable_lattice() {
        let d = ProbabilityDistribution::new(2, vec![0.25, 0.5, 0.25]).unwrap();
        let xs: Vec<i64> = d.points().map(|(x, _)| x).collect();
        assert_eq!(xs, vec![-2, 0, 2]);
    }

    #[test]
    fn point_mass_moments() {
        let d = ProbabilityDistribution::point_mass(4, 3); // x = 2
        assert_eq!(d.mean(), 2.0);
        assert_eq!(d.std_dev(), 0.0);
    }

    #[test]
    fn total_variation_basics() {
        let a = ProbabilityDistribution::point_mass(2, 0);
        let b = ProbabilityDistribution::point_mass(2, 2);
        assert_eq!(a.total_variation(&a).unwrap(), 0.0);
        assert_eq!(a.total_variation(&b).unwrap(), 1.0);
        let c = ProbabilityDistribution::point_mass(3, 0);
        assert!(a.total_variation(&c).is_err());
    }

    #[test]
    fn from_unnormalized_scales() {
        let d = ProbabilityDistribution::from_unnormalized(1, vec![3.0, 1.0]).unwrap();
        assert_eq!(d.weights(), &[0.75, 0.25]);
        assert!(ProbabilityDistribution::from_unnormalized(1, vec![0.0, 0.0]).is_err());
    }

    #[test]
    fn mirror_reverses_weights() {
        let d = ProbabilityDistribution::new(2, vec![0.1, 0.2, 0.7]).unwrap();
        assert_eq!(d.mirrored().weights(), &[0.7, 0.2, 0.1]);
    }
}
