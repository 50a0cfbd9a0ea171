//! Weighted second moments of a resonator and its ζ-twisted companion.
//!
//! Pair-sum forms, for Φ(x) = e^{−x²/2}:
//!   ∫ |R(t)|² Φ(t/T) dt = √(2π) T Σ r(n)r(m) Φ(T log(n/m)),
//!   ∫ |R′(t)|² Φ(t/T) dt = √(2π) T Σ r(n)r(m) log n log m Φ(T log(n/m)),
//!   ∫ Σ_{n ≤ αT log T} |R(t)|² n^{−1/2−it} Φ(t/T) dt
//!       = √(2π) T Σ r(h)r(k) n^{−1/2} Φ(T log(k/(hn))).

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use super::discrete::WINDOW_CAP;
use super::weight::WeightFunction;
use crate::error::{Result, ZrError};
use crate::quad::integrate_panels;
use crate::resonator::Resonator;
use crate::sum::{par_sum, NeumaierComplex};

/// Half-width, in units of T, of the quadrature range.
pub const QUAD_RADIUS: f64 = 8.0;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentIntegrals {
    pub m0: f64,
    pub m1: f64,
    pub zsum: f64,
    /// Upper limit ⌊αT log T⌋ of the n-sum in zsum.
    pub n_max: u64,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MomentCheck {
    pub pair_sums: MomentIntegrals,
    pub quadrature: MomentIntegrals,
    /// Largest of the three relative gaps.
    pub max_rel_gap: f64,
}

fn setup(r: &Resonator, big_t: f64, alpha: f64, w: WeightFunction) -> Result<u64> {
    if w != WeightFunction::Gaussian {
        return Err(ZrError::validation("moment identities use the Gaussian weight"));
    }
    if !r.is_finite() {
        return Err(ZrError::Kind("sigma1"));
    }
    if !(big_t > 1.0) || !big_t.is_finite() || !(alpha > 0.0) {
        return Err(ZrError::range(format!("need T > 1 and alpha > 0, got T = {big_t}, alpha = {alpha}")));
    }
    let card = r.support().len() as f64;
    if card * card > WINDOW_CAP {
        return Err(ZrError::Capacity {
            what: "resonator pairs",
            requested: card * card,
            cap: WINDOW_CAP,
        });
    }
    Ok((alpha * big_t * big_t.ln()).floor().max(1.0) as u64)
}

/// The three moments from their pair-sum forms.
pub fn moment_integrals(r: &Resonator, big_t: f64, alpha: f64, w: WeightFunction) -> Result<MomentIntegrals> {
    let n_max = setup(r, big_t, alpha, w)?;
    let s = r.support();
    let c = s.len();
    let scale = (2.0 * PI).sqrt() * big_t;
    let pair = |i: usize| (&s[i / c], &s[i % c]);
    let m0 = scale
        * par_sum(c * c, |i| {
            let (a, b) = pair(i);
            a.coeff() * b.coeff() * w.phi(big_t * (a.n().log_value() - b.n().log_value()))
        });
    let m1 = scale
        * par_sum(c * c, |i| {
            let (a, b) = pair(i);
            let (la, lb) = (a.n().log_value(), b.n().log_value());
            a.coeff() * b.coeff() * la * lb * w.phi(big_t * (la - lb))
        });
    let nm = n_max as usize;
    let zsum = scale
        * par_sum(c * c * nm, |i| {
            let (h, k) = pair(i / nm);
            let n = (i % nm + 1) as f64;
            let x = big_t * (k.n().log_value() - h.n().log_value() - n.ln());
            // Φ(x) underflows long before |x| = 40
            if x.abs() > 40.0 {
                0.0
            } else {
                h.coeff() * k.coeff() * w.phi(x) / n.sqrt()
            }
        });
    Ok(MomentIntegrals { m0, m1, zsum, n_max })
}

/// The same moments by adaptive quadrature over |t| ≤ 8T.
pub fn moment_quadrature(r: &Resonator, big_t: f64, alpha: f64, w: WeightFunction) -> Result<MomentIntegrals> {
    let n_max = setup(r, big_t, alpha, w)?;
    let s = r.support();
    let lo = -QUAD_RADIUS * big_t;
    let hi = QUAD_RADIUS * big_t;
    let span = r.log_length();
    let panels_for = |freq: f64| ((hi - lo) * freq / PI).ceil().max(32.0) as usize;
    let tol = |scale: f64| 1e-10 * scale.max(1.0);
    let base = (2.0 * PI).sqrt() * big_t * r.norm2();

    let r_and_deriv = |t: f64| {
        let mut v = NeumaierComplex::new();
        let mut d = NeumaierComplex::new();
        for e in s {
            let lg = e.n().log_value();
            let z = Complex64::from_polar(e.coeff(), t * lg);
            v.add(z);
            d.add(z * Complex64::new(0.0, lg));
        }
        (v.value(), d.value())
    };

    let m0 = integrate_panels(
        |t| Complex64::new(r_and_deriv(t).0.norm_sqr() * w.phi(t / big_t), 0.0),
        lo,
        hi,
        panels_for(span),
        tol(base),
    )
    .value
    .re;
    let m1 = integrate_panels(
        |t| Complex64::new(r_and_deriv(t).1.norm_sqr() * w.phi(t / big_t), 0.0),
        lo,
        hi,
        panels_for(span),
        tol(base * span * span),
    )
    .value
    .re;
    let logs: Vec<(f64, f64)> = (1..=n_max)
        .map(|n| ((n as f64).ln(), 1.0 / (n as f64).sqrt()))
        .collect();
    let zsum = integrate_panels(
        |t| {
            let mut dir = NeumaierComplex::new();
            for &(lg, inv) in &logs {
                dir.add(Complex64::from_polar(inv, -t * lg));
            }
            dir.value() * (r_and_deriv(t).0.norm_sqr() * w.phi(t / big_t))
        },
        lo,
        hi,
        panels_for(span + (n_max as f64).ln()),
        tol(base),
    )
    .value
    .re;
    Ok(MomentIntegrals { m0, m1, zsum, n_max })
}

fn rel_gap(a: f64, b: f64) -> f64 {
    let d = (a - b).abs();
    if d == 0.0 {
        0.0
    } else {
        d / a.abs().max(b.abs())
    }
}

pub fn check_moments(r: &Resonator, big_t: f64, alpha: f64, w: WeightFunction) -> Result<MomentCheck> {
    let pair_sums = moment_integrals(r, big_t, alpha, w)?;
    let quadrature = moment_quadrature(r, big_t, alpha, w)?;
    let max_rel_gap = rel_gap(pair_sums.m0, quadrature.m0)
        .max(rel_gap(pair_sums.m1, quadrature.m1))
        .max(rel_gap(pair_sums.zsum, quadrature.zsum));
    Ok(MomentCheck {
        pair_sums,
        quadrature,
        max_rel_gap,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::resonator::build_strip_resonator;

    #[test]
    fn trivial_resonator() {
        let r = build_strip_resonator(1.0, 2).unwrap();
        let m = moment_integrals(&r, 10.0, 1.0, WeightFunction::Gaussian).unwrap();
        assert!((m.m0 - 25.066_282_746_310_005).abs() < 1e-12);
        assert_eq!(m.m1, 0.0);
        assert_eq!(m.n_max, 23);
    }

    #[test]
    fn two_term_hand_check() {
        // R = 1 + 2^{it}: |R|² = 2 + 2cos(t log 2)
        let r = Resonator::from_support(
            crate::resonator::ResonatorKind::Strip,
            crate::resonator::ResonatorParams::Strip { x: 2.0, ell: 2 },
            vec![
                crate::resonator::SupportEntry(crate::resonator::FactoredInteger::one(), 1.0),
                crate::resonator::SupportEntry(crate::resonator::FactoredInteger::from_u64(2).unwrap(), 1.0),
            ],
        )
        .unwrap();
        let t = 3.0;
        let l2 = 2f64.ln();
        let want = (2.0 * PI).sqrt() * t * (2.0 + 2.0 * (-(t * l2).powi(2) / 2.0).exp());
        let m = moment_integrals(&r, t, 1.0, WeightFunction::Gaussian).unwrap();
        assert!((m.m0 - want).abs() < 1e-12);
    }

    #[test]
    fn routes_agree_small() {
        let r = build_strip_resonator(3.0, 2).unwrap();
        let c = check_moments(&r, 10.0, 1.0, WeightFunction::Gaussian).unwrap();
        assert!(c.max_rel_gap < 1e-6, "{c:?}");
    }
}
