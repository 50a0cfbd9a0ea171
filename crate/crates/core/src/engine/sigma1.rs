//! The σ = 1 ratio Σ_k a_{k,x} q_k against its Euler product.

use serde::Serialize;

use crate::primes::primes_le;
use crate::sum::Neumaier;

/// Subtrees of the smooth-number enumeration with total mass below this
/// are dropped from the tail and counted in `pruned_bound`.
pub const PRUNE_MASS: f64 = 1e-15;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct Sigma1Ratio {
    /// Σ_{k ≤ K} a_{k,x} q_k, exact over the x-smooth k ≤ K.
    pub series: f64,
    /// Σ_{k > K} a_{k,x} q_k, enumerated up to pruned subtrees.
    pub tail: f64,
    /// Upper bound on the mass of the pruned subtrees.
    pub pruned_bound: f64,
    /// ∏_{p ≤ x} (1 − q_p/p)^{−1}.
    pub closed_form: f64,
    /// closed_form − series.
    pub truncation_gap: f64,
}

impl Sigma1Ratio {
    /// closed_form − series − tail; lies in [0, pruned_bound] up to rounding.
    pub fn residual(&self) -> f64 {
        self.closed_form - self.series - self.tail
    }
}

struct Walk<'a> {
    primes: &'a [u64],
    weights: &'a [f64],
    /// suffix[i] = ∏_{j ≥ i} (1 − w_j)^{−1}
    suffix: &'a [f64],
    cutoff: u64,
    series: Neumaier,
    tail: Neumaier,
    pruned: Neumaier,
}

impl Walk<'_> {
    /// `k` is exact while ≤ cutoff; past it only its size matters.
    fn visit(&mut self, k: Option<u64>, w: f64, from: usize) {
        match k {
            Some(k) if k <= self.cutoff => self.series.add(w),
            _ => {
                let mass = w * self.suffix[from];
                if mass < PRUNE_MASS {
                    self.pruned.add(mass);
                    return;
                }
                self.tail.add(w);
            }
        }
        for j in from..self.primes.len() {
            let child = k.and_then(|k| k.checked_mul(self.primes[j]));
            self.visit(child, w * self.weights[j], j);
        }
    }
}

/// ∏_{p ≤ x} (1 − q_p/p)^{−1} with q_p = 1 − p/x.
pub fn sigma1_closed_form(x: f64) -> f64 {
    primes_le(x)
        .iter()
        .map(|&p| 1.0 / (1.0 - (1.0 - p as f64 / x) / p as f64))
        .product()
}

pub fn sigma1_ratio(x: f64, k_cutoff: u64) -> Sigma1Ratio {
    let (primes, weights): (Vec<u64>, Vec<f64>) = primes_le(x)
        .iter()
        .map(|&p| (p, (1.0 - p as f64 / x) / p as f64))
        .filter(|&(_, w)| w > 0.0)
        .unzip();
    let mut suffix = vec![1.0; primes.len() + 1];
    for i in (0..primes.len()).rev() {
        suffix[i] = suffix[i + 1] / (1.0 - weights[i]);
    }
    let closed_form = suffix[0];
    let mut walk = Walk {
        primes: &primes,
        weights: &weights,
        suffix: &suffix,
        cutoff: k_cutoff.max(1),
        series: Neumaier::new(),
        tail: Neumaier::new(),
        pruned: Neumaier::new(),
    };
    walk.visit(Some(1), 1.0, 0);
    let series = walk.series.value();
    Sigma1Ratio {
        series,
        tail: walk.tail.value(),
        pruned_bound: walk.pruned.value(),
        closed_form,
        truncation_gap: closed_form - series,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn spot_values() {
        let r = sigma1_ratio(3.0, 100_000);
        assert!((r.closed_form - 1.2).abs() < 1e-15);
        let r = sigma1_ratio(10.0, 100_000);
        assert!((r.closed_form - 2.5236).abs() < 1e-4);
        assert!((r.closed_form - sigma1_closed_form(10.0)).abs() < 1e-14);
        let r = sigma1_ratio(1.5, 10);
        assert_eq!((r.series, r.tail, r.closed_form), (1.0, 0.0, 1.0));
    }

    #[test]
    fn small_cutoff_series() {
        // x = 3: only q_2 = 1/3 is non-zero, so the terms are 6^{-j}
        let r = sigma1_ratio(3.0, 10);
        let want = 1.0 + 1.0 / 6.0 + 1.0 / 36.0 + 1.0 / 216.0;
        assert!((r.series - want).abs() < 1e-15);
        assert!((r.series + r.tail - 1.2).abs() < 1e-14);
    }

    #[test]
    fn residual_within_pruned_bound() {
        for &x in &[3.0, 10.0, 30.0] {
            let r = sigma1_ratio(x, 100_000);
            assert!(r.residual() >= -1e-12, "x={x}");
            assert!(r.residual() <= r.pruned_bound + 1e-12, "x={x}");
            assert!(r.residual().abs() < 1e-8, "x={x}");
        }
    }

    #[test]
    fn closed_form_monotone() {
        let mut prev = 0.0;
        for i in 0..60 {
            let x = 1.0 + i as f64 * 0.75;
            let c = sigma1_closed_form(x);
            assert!(c >= prev);
            prev = c;
        }
    }
}
