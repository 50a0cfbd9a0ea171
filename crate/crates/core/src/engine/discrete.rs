//! The discrete resonance sums D₁ and D₂ on a vertical progression.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::weight::WeightFunction;
use crate::error::{Result, ZrError};
use crate::resonator::Resonator;
use crate::sum::{par_sum, par_sum_complex, NeumaierComplex};
use crate::zeta::ProgressionSpec;

/// Largest ℓ-window the discrete sums accept.
pub const WINDOW_CAP: f64 = 1e8;

fn require_gaussian(w: WeightFunction) -> Result<()> {
    match w {
        WeightFunction::Gaussian => Ok(()),
        WeightFunction::Bump12 => Err(ZrError::validation("the discrete sums use the Gaussian weight")),
    }
}

fn require_finite(r: &Resonator) -> Result<()> {
    if r.is_finite() {
        Ok(())
    } else {
        Err(ZrError::Kind("sigma1"))
    }
}

/// Half-width L of the window |ℓ| ≤ L outside which Φ(ℓ/N) < 1e−16.
pub fn window_radius(w: WeightFunction, n: u64) -> Result<u64> {
    let l = (w.phi_radius() * n as f64).ceil();
    if 2.0 * l + 1.0 > WINDOW_CAP {
        return Err(ZrError::Capacity {
            what: "summation window",
            requested: 2.0 * l + 1.0,
            cap: WINDOW_CAP,
        });
    }
    Ok(l as u64)
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct D1Result {
    pub value: f64,
    pub window: u64,
    /// value / (N (log N)³ ‖R‖²).
    pub envelope_ratio: f64,
}

/// Σ_ℓ |R(αℓ + β)|² Φ(ℓ/N).
pub fn d1_discrete(r: &Resonator, prog: &ProgressionSpec, n: u64, w: WeightFunction) -> Result<D1Result> {
    require_gaussian(w)?;
    require_finite(r)?;
    if n == 0 {
        return Err(ZrError::range("N must be positive"));
    }
    let l = window_radius(w, n)?;
    let nf = n as f64;
    let count = 2 * l as usize + 1;
    let value = par_sum(count, |i| {
        let ell = i as i64 - l as i64;
        r.eval(prog.t_at(ell)).norm_sqr() * w.phi(ell as f64 / nf)
    });
    Ok(D1Result {
        value,
        window: l,
        envelope_ratio: value / (nf * nf.ln().powi(3) * r.norm2()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct D2Result {
    /// Σ_ℓ Σ_{n ≤ αN log N} |R(αℓ)|² n^{−1/2−iαℓ} Φ(ℓ/N).
    pub direct: Complex64,
    /// The same sum after Poisson summation, all frequencies kept.
    pub poisson_full: f64,
    /// Only the zero frequency; a lower bound for Re(direct).
    pub poisson_lower: f64,
    pub n_max: u64,
    pub window: u64,
}

fn n_max(alpha: f64, n: u64) -> u64 {
    let nf = n as f64;
    (alpha * nf * nf.ln()).floor().max(1.0) as u64
}

/// (r(h)r(k), log(k/h)) over all ordered support pairs.
fn pairs(r: &Resonator) -> Result<Vec<(f64, f64)>> {
    let card = r.support().len() as f64;
    if card * card > WINDOW_CAP {
        return Err(ZrError::Capacity {
            what: "resonator pairs",
            requested: card * card,
            cap: WINDOW_CAP,
        });
    }
    let s = r.support();
    Ok(s.iter()
        .flat_map(|h| {
            s.iter()
                .map(move |k| (h.coeff() * k.coeff(), k.n().log_value() - h.n().log_value()))
        })
        .collect())
}

pub fn d2_discrete(r: &Resonator, prog: &ProgressionSpec, n: u64, w: WeightFunction) -> Result<D2Result> {
    require_gaussian(w)?;
    require_finite(r)?;
    if prog.beta() != 0.0 {
        return Err(ZrError::Beta { beta: prog.beta() });
    }
    if n < 2 {
        return Err(ZrError::range("N must be at least 2"));
    }
    let l = window_radius(w, n)?;
    let alpha = prog.alpha();
    let nm = n_max(alpha, n);
    let nf = n as f64;
    let logs: Vec<f64> = (1..=nm).map(|k| (k as f64).ln()).collect();
    let inv_sqrt: Vec<f64> = (1..=nm).map(|k| 1.0 / (k as f64).sqrt()).collect();

    let direct = par_sum_complex(2 * l as usize + 1, |i| {
        let ell = i as i64 - l as i64;
        let t = alpha * ell as f64;
        let weight = r.eval(t).norm_sqr() * w.phi(ell as f64 / nf);
        let mut inner = NeumaierComplex::new();
        for (lg, s) in logs.iter().zip(&inv_sqrt) {
            inner.add(Complex64::from_polar(*s, -t * lg));
        }
        inner.value() * weight
    });

    // N Σ r(h)r(k) n^{−1/2} Σ_j Φ̂(N(α/2π · log(k/(hn)) − j))
    let pr = pairs(r)?;
    let radius = w.hat_radius() / nf;
    let scale = alpha / (2.0 * PI);
    let term = |idx: usize, full: bool| -> f64 {
        let (coeff, log_ratio) = pr[idx / nm as usize];
        let m = idx % nm as usize;
        let c = scale * (log_ratio - logs[m]);
        let mut acc = 0.0;
        if full {
            let lo = (c - radius).ceil() as i64;
            let hi = (c + radius).floor() as i64;
            for j in lo..=hi {
                acc += w.phi_hat(nf * (c - j as f64)).re;
            }
        } else {
            acc = w.phi_hat(nf * c).re;
        }
        coeff * inv_sqrt[m] * acc
    };
    let total = pr.len() * nm as usize;
    let poisson_full = nf * par_sum(total, |i| term(i, true));
    let poisson_lower = nf * par_sum(total, |i| term(i, false));
    Ok(D2Result {
        direct,
        poisson_full,
        poisson_lower,
        n_max: nm,
        window: l,
    })
}

/// Zero-frequency Poisson sum for a shifted progression, with the phase
/// (hn/k)^{−iβ} kept. Its real part carries no sign guarantee.
pub fn d2_signed(r: &Resonator, prog: &ProgressionSpec, n: u64, w: WeightFunction) -> Result<Complex64> {
    require_gaussian(w)?;
    require_finite(r)?;
    if n < 2 {
        return Err(ZrError::range("N must be at least 2"));
    }
    let nm = n_max(prog.alpha(), n);
    let nf = n as f64;
    let pr = pairs(r)?;
    let scale = prog.alpha() / (2.0 * PI);
    let beta = prog.beta();
    let total = pr.len() * nm as usize;
    let v = par_sum_complex(total, |i| {
        let (coeff, log_ratio) = pr[i / nm as usize];
        let m = i % nm as usize + 1;
        let lr = log_ratio - (m as f64).ln();
        Complex64::from_polar(coeff / (m as f64).sqrt() * w.phi_hat(nf * scale * lr).re, beta * lr)
    });
    Ok(v * nf)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonator::build_strip_resonator;

    fn trivial() -> Resonator {
        build_strip_resonator(1.0, 2).unwrap()
    }

    fn prog(alpha: f64) -> ProgressionSpec {
        ProgressionSpec::homogeneous(0.5, alpha).unwrap()
    }

    #[test]
    fn d1_trivial_matches_poisson() {
        let g = WeightFunction::Gaussian;
        let d = d1_discrete(&trivial(), &prog(1.0), 10, g).unwrap();
        let dual: f64 = (-3i64..=3).map(|j| 10.0 * g.phi_hat(10.0 * j as f64).re).sum();
        assert!((d.value - dual).abs() < 1e-10);
        let d = d1_discrete(&trivial(), &prog(1.0), 1, g).unwrap();
        let direct: f64 = (-40i64..=40).map(|l| (-0.5 * (l * l) as f64).exp()).sum();
        assert!((d.value - direct).abs() < 1e-14);
    }

    #[test]
    fn d1_strip_dominates_diagonal() {
        let r = build_strip_resonator(3.0, 2).unwrap();
        let d = d1_discrete(&r, &prog(1.0), 100, WeightFunction::Gaussian).unwrap();
        assert!(d.value >= 4.0);
    }

    #[test]
    fn d2_trivial_routes_agree() {
        let d = d2_discrete(&trivial(), &prog(1.0), 50, WeightFunction::Gaussian).unwrap();
        assert!((d.direct.re - d.poisson_full).abs() < 1e-8 * d.poisson_full);
        assert!(d.direct.im.abs() < 1e-8 * d.poisson_full);
        assert!(d.poisson_lower >= 50.0 * (2.0 * PI).sqrt());
    }

    #[test]
    fn d2_strip_lower_bound() {
        let r = build_strip_resonator(3.0, 2).unwrap();
        let d = d2_discrete(&r, &prog(1.0), 100, WeightFunction::Gaussian).unwrap();
        assert!(d.poisson_lower > 0.0);
        assert!(d.poisson_lower <= d.direct.re * (1.0 + 1e-6));
        assert!((d.direct.re - d.poisson_full).abs() < 1e-8 * d.poisson_full);
    }

    #[test]
    fn d2_rejects_shift() {
        let p = ProgressionSpec::new(0.75, 1.0, 0.5).unwrap();
        assert!(matches!(
            d2_discrete(&trivial(), &p, 10, WeightFunction::Gaussian),
            Err(ZrError::Beta { .. })
        ));
        let s = d2_signed(&trivial(), &p, 10, WeightFunction::Gaussian).unwrap();
        assert!(s.re.is_finite());
    }

    #[test]
    fn bump_rejected() {
        assert!(d1_discrete(&trivial(), &prog(1.0), 10, WeightFunction::Bump12).is_err());
    }
}
