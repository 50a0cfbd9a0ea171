use std::cmp::Ordering;
use std::collections::BinaryHeap;

use serde::{Deserialize, Serialize};

use super::{FactoredInteger, Resonator, ResonatorKind, ResonatorParams, SupportEntry};
use crate::error::{Result, ZrError};
use crate::primes::{primes_le, primes_up_to};
use crate::sum;

/// Largest support any builder will materialise.
pub const DEFAULT_SUPPORT_CAP: usize = 1_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct StripParams {
    pub x: f64,
    pub ell: u32,
}

/// x = (1/2 − δ) log N / log log N and ℓ = ⌊log log N⌋.
pub fn strip_params_from_n(n: f64, delta: f64) -> Result<StripParams> {
    if !(n >= 16.0 && n.is_finite()) {
        return Err(ZrError::range(format!("N = {n} must be at least 16")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(ZrError::range(format!("delta = {delta} outside (0, 1/2)")));
    }
    let log_n = n.ln();
    let loglog = log_n.ln();
    Ok(StripParams {
        x: (0.5 - delta) * log_n / loglog,
        ell: loglog.floor() as u32,
    })
}

/// log M for M = ∏_{p ≤ x} p^{ℓ−1}.
pub fn strip_log_m(x: f64, ell: u32) -> f64 {
    let theta = sum::sum(primes_le(x).iter().map(|&p| (p as f64).ln()));
    ell.saturating_sub(1) as f64 * theta
}

pub fn build_strip_resonator(x: f64, ell: u32) -> Result<Resonator> {
    build_strip_resonator_with_cap(x, ell, DEFAULT_SUPPORT_CAP)
}

/// Characteristic function of the divisors of M = ∏_{p ≤ x} p^{ℓ−1}.
pub fn build_strip_resonator_with_cap(x: f64, ell: u32, cap: usize) -> Result<Resonator> {
    if !(x >= 0.0) {
        return Err(ZrError::range(format!("x = {x} must be non-negative")));
    }
    if ell == 0 {
        return Err(ZrError::range("ell must be at least 1"));
    }
    let params = ResonatorParams::Strip { x, ell };
    let primes = primes_le(x);
    if primes.is_empty() || ell == 1 {
        return Ok(Resonator::trivial(ResonatorKind::Strip, params));
    }
    let card = (ell as f64).powi(primes.len() as i32);
    if card > cap as f64 {
        return Err(ZrError::Capacity {
            what: "strip resonator support",
            requested: card,
            cap: cap as f64,
        });
    }
    let m = FactoredInteger::from_factors_unchecked(
        primes.iter().map(|&p| (p, ell - 1)).collect(),
    );
    let support = m
        .divisors()
        .into_iter()
        .map(|d| SupportEntry(d, 1.0))
        .collect();
    Resonator::from_support(ResonatorKind::Strip, params, support)
}

/// R(t) = ∏_{p ≤ x} (1 − q_p p^{it})^{−1} with q_p = 1 − p/x.
pub fn build_sigma1_resonator(x: f64) -> Result<Resonator> {
    if !(x >= 0.0 && x.is_finite()) {
        return Err(ZrError::range(format!("x = {x} must be non-negative")));
    }
    let euler = primes_le(x)
        .iter()
        .map(|&p| (p, 1.0 - p as f64 / x))
        .collect();
    Ok(Resonator::euler_product(x, euler))
}

/// Tuning for the critical-line construction.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct CriticalSeed {
    /// Weight scale in (0, 1).
    pub gamma: f64,
    /// Number of dyadic prime classes.
    pub classes: u32,
}

impl Default for CriticalSeed {
    fn default() -> Self {
        Self {
            gamma: 0.5,
            classes: 4,
        }
    }
}

pub fn build_critical_resonator(t: u64, kappa: f64, seed: CriticalSeed) -> Result<Resonator> {
    build_critical_resonator_with_cap(t, kappa, seed, DEFAULT_SUPPORT_CAP)
}

/// Long sparse resonator on square-free numbers.
///
/// With L = √(log T · log log T), primes are drawn from the dyadic classes
/// (b·2^{k−1}, b·2^k], b = max(2, L log L), k = 1..classes, and weighted by
/// f(p) = min(0.95, γ L / (k √p log p)). The support is the divisor-closed
/// collection of the ⌊T^κ⌋ square-free products with the largest weights
/// r(n) = ∏_{p | n} f(p), enumerated best-first.
pub fn build_critical_resonator_with_cap(
    t: u64,
    kappa: f64,
    seed: CriticalSeed,
    cap: usize,
) -> Result<Resonator> {
    if t < 1000 {
        return Err(ZrError::range(format!("T = {t} must be at least 1000")));
    }
    if !(kappa > 0.0 && kappa < 0.5) {
        return Err(ZrError::range(format!("kappa = {kappa} outside (0, 1/2)")));
    }
    if !(seed.gamma > 0.0 && seed.gamma < 1.0) || seed.classes == 0 {
        return Err(ZrError::range("seed needs gamma in (0, 1) and classes >= 1"));
    }
    let budget = ((t as f64).powf(kappa) * (1.0 + 1e-12)).floor();
    if budget > cap as f64 {
        return Err(ZrError::Capacity {
            what: "critical resonator support",
            requested: budget,
            cap: cap as f64,
        });
    }
    let budget = budget as usize;
    let params = ResonatorParams::Critical { t, kappa, seed };
    let weights = critical_prime_weights(t as f64, seed);

    let mut heap = BinaryHeap::new();
    heap.push(Node::root());
    let mut support = Vec::with_capacity(budget);
    while support.len() < budget {
        let Some(node) = heap.pop() else { break };
        if let Some(&last) = node.idx.last() {
            if last + 1 < weights.len() {
                heap.push(node.extend(&weights));
                heap.push(node.replace(&weights));
            }
        } else if !weights.is_empty() {
            heap.push(node.extend(&weights));
        }
        support.push(node.into_entry(&weights));
    }
    Resonator::from_support(ResonatorKind::Critical, params, support)
}

/// (p, f(p)) sorted by weight descending, prime ascending on ties.
fn critical_prime_weights(t: f64, seed: CriticalSeed) -> Vec<(u64, f64)> {
    let log_t = t.ln();
    let l = (log_t * log_t.ln()).sqrt();
    let base = (l * l.ln()).max(2.0);
    let top = base * 2f64.powi(seed.classes as i32);
    let mut out: Vec<(u64, f64)> = primes_up_to(top.floor() as u64)
        .iter()
        .filter(|&&p| p as f64 > base)
        .map(|&p| {
            let pf = p as f64;
            let class = (pf / base).log2().ceil().max(1.0);
            let w = seed.gamma * l / (class * pf.sqrt() * pf.ln());
            (p, w.min(0.95))
        })
        .collect();
    out.sort_by(|a, b| b.1.total_cmp(&a.1).then(a.0.cmp(&b.0)));
    out
}

#[derive(Debug, Clone)]
struct Node {
    weight: f64,
    log: f64,
    /// Positions into the weight-sorted prime list, increasing.
    idx: Vec<usize>,
}

impl Node {
    fn root() -> Self {
        Node {
            weight: 1.0,
            log: 0.0,
            idx: Vec::new(),
        }
    }

    fn extend(&self, w: &[(u64, f64)]) -> Node {
        let next = self.idx.last().map_or(0, |&j| j + 1);
        let mut idx = self.idx.clone();
        idx.push(next);
        Node::from_idx(idx, w)
    }

    fn replace(&self, w: &[(u64, f64)]) -> Node {
        let mut idx = self.idx.clone();
        if let Some(last) = idx.last_mut() {
            *last += 1;
        }
        Node::from_idx(idx, w)
    }

    fn from_idx(idx: Vec<usize>, w: &[(u64, f64)]) -> Node {
        let weight = idx.iter().map(|&i| w[i].1).product();
        let log = sum::sum(idx.iter().map(|&i| (w[i].0 as f64).ln()));
        Node { weight, log, idx }
    }

    fn primes(&self, w: &[(u64, f64)]) -> Vec<u64> {
        let mut ps: Vec<u64> = self.idx.iter().map(|&i| w[i].0).collect();
        ps.sort_unstable();
        ps
    }

    fn into_entry(self, w: &[(u64, f64)]) -> SupportEntry {
        let factors = self.primes(w).into_iter().map(|p| (p, 1)).collect();
        SupportEntry(FactoredInteger::from_factors_unchecked(factors), self.weight)
    }
}

impl PartialEq for Node {
    fn eq(&self, other: &Self) -> bool {
        self.cmp(other) == Ordering::Equal
    }
}

impl Eq for Node {}

impl PartialOrd for Node {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Node {
    // max-heap: larger weight first, then smaller log, then smaller index list
    fn cmp(&self, other: &Self) -> Ordering {
        self.weight
            .total_cmp(&other.weight)
            .then_with(|| other.log.total_cmp(&self.log))
            .then_with(|| other.idx.cmp(&self.idx))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn strip_params_large_n() {
        let sp = strip_params_from_n(1e100, 0.1).unwrap();
        assert!((sp.x - 16.93).abs() < 5e-3, "x = {}", sp.x);
        assert_eq!(sp.ell, 5);
        // M = 30030^4
        let log_m = strip_log_m(sp.x, sp.ell);
        assert!((log_m - 4.0 * 30030f64.ln()).abs() < 1e-10);
        assert!(log_m <= 0.4 * 1e100f64.ln());
    }

    #[test]
    fn strip_params_small_n() {
        let sp = strip_params_from_n(16.0, 0.49).unwrap();
        // 0.01 * log 16 / log log 16
        assert!((sp.x - 0.027_188).abs() < 1e-5);
        assert_eq!(sp.ell, 1);
        let r = build_strip_resonator(sp.x, sp.ell).unwrap();
        assert_eq!(r.card(), 1);
        assert!(strip_params_from_n(15.0, 0.1).is_err());
        assert!(strip_params_from_n(100.0, 0.5).is_err());
        assert!(strip_params_from_n(100.0, 0.0).is_err());
    }

    #[test]
    fn strip_capacity() {
        assert!(matches!(
            build_strip_resonator_with_cap(13.0, 4, 1000),
            Err(ZrError::Capacity { .. })
        ));
        assert_eq!(build_strip_resonator_with_cap(13.0, 4, 4096).unwrap().card(), 4096);
    }

    #[test]
    fn critical_cardinality_cap() {
        let r = build_critical_resonator(10_000, 0.4, CriticalSeed::default()).unwrap();
        assert!(r.card() <= 39);
        assert_eq!(r.card(), 39);
        let r = build_critical_resonator(1000, 0.1, CriticalSeed::default()).unwrap();
        assert_eq!(r.card(), 1);
        assert!(r.support()[0].0.is_one());
    }

    #[test]
    fn critical_is_divisor_closed_and_squarefree() {
        let r = build_critical_resonator(1_000_000, 0.45, CriticalSeed::default()).unwrap();
        let support: Vec<&FactoredInteger> = r.support().iter().map(|e| e.n()).collect();
        for n in &support {
            assert!(n.factors().iter().all(|&(_, e)| e == 1));
            for d in n.divisors() {
                assert!(support.contains(&&d), "divisor missing");
            }
        }
        assert!(r.support().iter().all(|e| e.coeff() > 0.0));
    }

    #[test]
    fn critical_is_deterministic() {
        let a = build_critical_resonator(1_000_000, 0.45, CriticalSeed::default()).unwrap();
        let b = build_critical_resonator(1_000_000, 0.45, CriticalSeed::default()).unwrap();
        assert_eq!(a, b);
        assert_eq!(a.to_json().unwrap(), b.to_json().unwrap());
    }

    #[test]
    fn critical_rejections() {
        let s = CriticalSeed::default();
        assert!(build_critical_resonator(999, 0.3, s).is_err());
        assert!(build_critical_resonator(10_000, 0.5, s).is_err());
        assert!(matches!(
            build_critical_resonator_with_cap(1_000_000, 0.45, s, 100),
            Err(ZrError::Capacity { .. })
        ));
    }
}
