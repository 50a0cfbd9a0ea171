//! Reduction of the weighted ζ-sum on a shifted progression to a gcd-sum.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::weight::WeightFunction;
use crate::error::{Result, ZrError};
use crate::gcd::gcd_sum;
use crate::resonator::Resonator;
use crate::sum::{par_sum_complex, NeumaierComplex};
use crate::zeta::ProgressionSpec;

/// Above this many (ℓ, k) terms the direct route is skipped.
pub const DIRECT_WORK_CAP: f64 = 2e9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ReductionReport {
    /// The direct route when computed, otherwise the Poisson route.
    pub lhs: Complex64,
    pub lhs_direct: Option<Complex64>,
    pub lhs_poisson: Complex64,
    /// |direct − poisson| / |poisson|, when the direct route ran.
    pub route_gap: Option<f64>,
    /// N · gcd_sum(R, σ).
    pub main_term: f64,
    /// lhs − main_term.
    pub error_measured: Complex64,
    /// N ‖R‖² exp((log N)^{1−σ} / ((1−σ) log log N)).
    pub error_envelope: f64,
    pub k_max: u64,
}

impl ReductionReport {
    pub fn within_envelope(&self) -> bool {
        self.error_measured.norm() <= self.error_envelope
    }
}

pub fn verify_reduction(
    r: &Resonator,
    prog: &ProgressionSpec,
    n: u64,
    w: WeightFunction,
    delta: f64,
) -> Result<ReductionReport> {
    if w != WeightFunction::Bump12 {
        return Err(ZrError::validation("the reduction uses the bump weight on [1, 2]"));
    }
    let sigma = prog.sigma();
    if !(sigma > 0.5 && sigma < 1.0) {
        return Err(ZrError::range(format!("sigma = {sigma} outside (1/2, 1)")));
    }
    if !(delta > 0.0 && delta < 0.5) {
        return Err(ZrError::range(format!("delta = {delta} outside (0, 1/2)")));
    }
    if n < 16 {
        return Err(ZrError::range("N must be at least 16"));
    }
    if !r.is_finite() {
        return Err(ZrError::Kind("sigma1"));
    }
    let nf = n as f64;
    let limit = (0.5 - delta) * nf.ln();
    if r.log_length() > limit * (1.0 + 1e-12) {
        return Err(ZrError::Shape(format!(
            "resonator length e^{:.6} exceeds N^(1/2 - delta) = e^{:.6}",
            r.log_length(),
            limit
        )));
    }
    let alpha = prog.alpha();
    let beta = prog.beta();
    let k_max = (3.0 * alpha * nf).floor() as u64;
    let ks: Vec<(f64, f64)> = (1..=k_max)
        .map(|k| {
            let lg = (k as f64).ln();
            (lg, (-sigma * lg).exp())
        })
        .collect();

    let lhs_direct = if ((n - 1) as f64) * (k_max as f64 + r.card() as f64) <= DIRECT_WORK_CAP {
        Some(par_sum_complex((n - 1) as usize, |i| {
            let ell = n + 1 + i as u64;
            let t = prog.t_at(ell as i64);
            let weight = r.eval(t).norm_sqr() * w.phi(ell as f64 / nf);
            let mut acc = NeumaierComplex::new();
            for &(lg, amp) in &ks {
                acc.add(Complex64::from_polar(amp, -t * lg));
            }
            acc.value() * weight
        }))
    } else {
        None
    };

    // Σ r(m)r(n) k^{−σ} (n/(mk))^{iβ} N Σ_j Φ̂(N(j − α/2π · log(n/(mk))))
    let s = r.support();
    let c = s.len();
    let radius = w.hat_radius() / nf;
    let scale = alpha / (2.0 * PI);
    let lhs_poisson = par_sum_complex(c * c, |i| {
        let (m, nn) = (&s[i / c], &s[i % c]);
        let base = nn.n().log_value() - m.n().log_value();
        let mut acc = NeumaierComplex::new();
        for &(lg, amp) in &ks {
            let l = base - lg;
            let centre = scale * l;
            let lo = (centre - radius).ceil() as i64;
            let hi = (centre + radius).floor() as i64;
            if lo > hi {
                continue;
            }
            let phase = Complex64::from_polar(amp, beta * l);
            for j in lo..=hi {
                acc.add(phase * w.phi_hat(nf * (j as f64 - centre)));
            }
        }
        acc.value() * (m.coeff() * nn.coeff() * nf)
    });

    let lhs = lhs_direct.unwrap_or(lhs_poisson);
    let main_term = nf * gcd_sum(r, sigma)?.value;
    let error_envelope =
        nf * r.norm2() * (nf.ln().powf(1.0 - sigma) / ((1.0 - sigma) * nf.ln().ln())).exp();
    Ok(ReductionReport {
        lhs,
        lhs_direct,
        lhs_poisson,
        route_gap: lhs_direct.map(|d| (d - lhs_poisson).norm() / lhs_poisson.norm()),
        main_term,
        error_measured: lhs - main_term,
        error_envelope,
        k_max,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonator::build_strip_resonator;

    #[test]
    fn trivial_routes_agree() {
        let r = build_strip_resonator(1.0, 2).unwrap();
        let p = ProgressionSpec::new(0.75, 1.0, 0.3).unwrap();
        let rep = verify_reduction(&r, &p, 500, WeightFunction::Bump12, 0.2).unwrap();
        assert!(rep.route_gap.unwrap() < 1e-6, "{rep:?}");
        assert_eq!(rep.main_term, 500.0);
        assert_eq!(rep.k_max, 1500);
        assert!(rep.lhs - rep.error_measured == Complex64::new(rep.main_term, 0.0) || {
            ((rep.lhs - rep.error_measured).re - rep.main_term).abs() < 1e-9
        });
    }

    #[test]
    fn length_condition() {
        let r = build_strip_resonator(3.0, 2).unwrap();
        let p = ProgressionSpec::new(0.75, 1.0, 0.0).unwrap();
        assert!(matches!(
            verify_reduction(&r, &p, 500, WeightFunction::Bump12, 0.3),
            Err(ZrError::Shape(_))
        ));
        assert!(verify_reduction(&r, &p, 500, WeightFunction::Gaussian, 0.2).is_err());
        let p = ProgressionSpec::new(0.5, 1.0, 0.0).unwrap();
        assert!(matches!(
            verify_reduction(&r, &p, 500, WeightFunction::Bump12, 0.2),
            Err(ZrError::Range(_))
        ));
    }

    #[test]
    fn large_n_uses_poisson_route() {
        let params = crate::resonator::strip_params_from_n(1e6, 0.35).unwrap();
        let r = build_strip_resonator(params.x, params.ell).unwrap();
        let p = ProgressionSpec::new(0.8, 1.0, 0.0).unwrap();
        let rep = verify_reduction(&r, &p, 1_000_000, WeightFunction::Bump12, 0.35).unwrap();
        assert!(rep.lhs_direct.is_none());
        assert!(rep.within_envelope(), "{rep:?}");
    }
}
