//! Gál-type gcd-sums over resonator supports.

use std::collections::HashMap;
use std::io::Write;

use serde::Serialize;

use crate::error::{Result, ZrError};
use crate::primes::primes_le;
use crate::resonator::{build_strip_resonator, FactoredInteger, Resonator, ResonatorKind, ResonatorParams};
use crate::sum::{par_sum, Neumaier};

/// Largest number of (n, m) candidate pairs `gcd_sum` will enumerate.
pub const TRIPLE_CAP: f64 = 1e8;

/// Relative slack for certificate comparisons.
pub const CERTIFICATE_SLACK: f64 = 1e-9;

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct DivisorPowerSum {
    pub sum: f64,
    /// exp((log n)^{1−σ} / ((1−σ) log log n)) for n ≥ 16; a reference
    /// envelope only.
    pub gronwall_ref: Option<f64>,
}

fn check_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.0 && sigma < 1.0 {
        Ok(())
    } else {
        Err(ZrError::range(format!("sigma = {sigma} outside (0, 1)")))
    }
}

/// Σ_{m | n} (m/n)^σ by divisor enumeration.
pub fn divisor_power_sum(n: &FactoredInteger, sigma: f64) -> Result<DivisorPowerSum> {
    check_sigma(sigma)?;
    let log_n = n.log_value();
    let sum = n
        .divisors()
        .iter()
        .map(|d| (sigma * (d.log_value() - log_n)).exp())
        .collect::<Neumaier>()
        .value();
    let gronwall_ref = (log_n >= 16f64.ln())
        .then(|| (log_n.powf(1.0 - sigma) / ((1.0 - sigma) * log_n.ln())).exp());
    Ok(DivisorPowerSum { sum, gronwall_ref })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GcdSumResult {
    pub value: f64,
    /// Number of (m, k, n) with mk = n and m, n in the support.
    pub triple_count: u64,
    /// Product lower bound for the divisor-set resonator.
    pub lower_bound_certificate: Option<f64>,
}

/// Σ_{mk = n} r(m) r(n) k^{−σ} with m, n ranging over the support.
pub fn gcd_sum(r: &Resonator, sigma: f64) -> Result<GcdSumResult> {
    check_sigma(sigma)?;
    if !r.is_finite() {
        return Err(ZrError::Kind("sigma1"));
    }
    let support = r.support();
    let candidates: f64 = support.iter().map(|e| e.n().divisor_count()).sum();
    if candidates > TRIPLE_CAP {
        return Err(ZrError::Capacity {
            what: "gcd-sum triples",
            requested: candidates,
            cap: TRIPLE_CAP,
        });
    }
    let coeff: HashMap<&[(u64, u32)], f64> =
        support.iter().map(|e| (e.n().factors(), e.coeff())).collect();

    let per_n = |i: usize| -> (f64, u64) {
        let entry = &support[i];
        let log_n = entry.n().log_value();
        let mut acc = Neumaier::new();
        let mut count = 0;
        for m in entry.n().divisors() {
            if let Some(&rm) = coeff.get(m.factors()) {
                acc.add(rm * (-sigma * (log_n - m.log_value())).exp());
                count += 1;
            }
        }
        (entry.coeff() * acc.value(), count)
    };
    let value = par_sum(support.len(), |i| per_n(i).0);
    let triple_count = (0..support.len()).map(|i| per_n(i).1).sum();

    let lower_bound_certificate = match (r.kind(), r.params()) {
        (ResonatorKind::Strip, &ResonatorParams::Strip { x, ell }) => {
            Some(strip_gcd_lower_bound(x, ell, sigma))
        }
        _ => None,
    };
    Ok(GcdSumResult {
        value,
        triple_count,
        lower_bound_certificate,
    })
}

/// ℓ^{π(x)} ∏_{p ≤ x} (1 + p^{−σ})^{1 − 1/ℓ}.
pub fn strip_gcd_lower_bound(x: f64, ell: u32, sigma: f64) -> f64 {
    let primes = primes_le(x);
    if ell <= 1 || primes.is_empty() {
        return 1.0;
    }
    let expo = 1.0 - 1.0 / ell as f64;
    let log_prod: f64 = primes
        .iter()
        .map(|&p| (1.0 + (p as f64).powf(-sigma)).ln() * expo)
        .collect::<Neumaier>()
        .value();
    (ell as f64).powi(primes.len() as i32) * log_prod.exp()
}

/// One row of the divisor-set gcd-sum grid.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GcdGridRow {
    pub x: f64,
    pub ell: u32,
    pub sigma: f64,
    pub gcd_sum: f64,
    pub certificate: f64,
    pub ratio: f64,
}

impl GcdGridRow {
    pub fn passes(&self) -> bool {
        self.gcd_sum >= self.certificate * (1.0 - CERTIFICATE_SLACK)
    }
}

pub fn gcd_grid(xs: &[f64], ells: &[u32], sigmas: &[f64]) -> Result<Vec<GcdGridRow>> {
    let mut rows = Vec::with_capacity(xs.len() * ells.len() * sigmas.len());
    for &x in xs {
        for &ell in ells {
            let r = build_strip_resonator(x, ell)?;
            for &sigma in sigmas {
                let g = gcd_sum(&r, sigma)?;
                let certificate = strip_gcd_lower_bound(x, ell, sigma);
                rows.push(GcdGridRow {
                    x,
                    ell,
                    sigma,
                    gcd_sum: g.value,
                    certificate,
                    ratio: g.value / certificate,
                });
            }
        }
    }
    Ok(rows)
}

pub fn write_gcd_grid_csv<W: Write>(rows: &[GcdGridRow], mut w: W) -> std::io::Result<()> {
    writeln!(w, "x,ell,sigma,gcd_sum,certificate,ratio")?;
    for r in rows {
        writeln!(
            w,
            "{},{},{},{},{},{}",
            r.x, r.ell, r.sigma, r.gcd_sum, r.certificate, r.ratio
        )?;
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;

    fn fi(n: u64) -> FactoredInteger {
        FactoredInteger::from_u64(n).unwrap()
    }

    #[test]
    fn divisor_sums() {
        assert_eq!(divisor_power_sum(&fi(1), 0.5).unwrap().sum, 1.0);
        assert_eq!(divisor_power_sum(&fi(1), 0.5).unwrap().gronwall_ref, None);
        let want: f64 = [1.0, 2.0, 3.0, 4.0, 6.0, 12.0].iter().map(|m: &f64| (m / 12.0).sqrt()).sum();
        let got = divisor_power_sum(&fi(12), 0.5).unwrap().sum;
        assert!((got - want).abs() < 1e-14);
        assert!((got - 3.481_39).abs() < 1e-5);
        assert!(divisor_power_sum(&fi(12), 1.0).is_err());
        assert!(divisor_power_sum(&fi(16), 0.5).unwrap().gronwall_ref.is_some());
    }

    #[test]
    fn powers_of_two_stay_below_geometric_limit() {
        let limit = 1.0 / (1.0 - 2f64.powf(-0.5));
        for k in 1..=20u32 {
            let n = FactoredInteger::from_factors(vec![(2, k)]).unwrap();
            let got = divisor_power_sum(&n, 0.5).unwrap().sum;
            let want: f64 = (0..=k).map(|j| 2f64.powf(-(j as f64) / 2.0)).sum();
            assert!((got - want).abs() < 1e-13);
            assert!(got < limit);
        }
    }

    #[test]
    fn trivial_support() {
        let r = build_strip_resonator(1.0, 3).unwrap();
        let g = gcd_sum(&r, 0.3).unwrap();
        assert_eq!((g.value, g.triple_count), (1.0, 1));
    }

    #[test]
    fn strip_x3_ell2_spot_value() {
        let r = build_strip_resonator(3.0, 2).unwrap();
        let g = gcd_sum(&r, 0.5).unwrap();
        let want = 4.0 + 2.0 * 2f64.powf(-0.5) + 2.0 * 3f64.powf(-0.5) + 6f64.powf(-0.5);
        assert!((g.value - want).abs() < 1e-14);
        assert!((g.value - 6.977_17).abs() < 1e-5);
        assert_eq!(g.triple_count, 9);
        let cert = g.lower_bound_certificate.unwrap();
        assert!((cert - 6.563_786).abs() < 1e-6);
        assert!(g.value >= cert);
    }

    #[test]
    fn lower_bound_values() {
        let want = 4.0 * ((1.0 + 2f64.powf(-0.5)) * (1.0 + 3f64.powf(-0.5))).sqrt();
        assert!((strip_gcd_lower_bound(3.0, 2, 0.5) - want).abs() < 1e-13);
        assert_eq!(strip_gcd_lower_bound(1.0, 4, 0.7), 1.0);
        let prod: f64 = [2.0f64, 3.0, 5.0].iter().map(|p| 1.0 + p.powf(-0.75)).product();
        let want = 27.0 * prod.powf(2.0 / 3.0);
        assert!((strip_gcd_lower_bound(5.0, 3, 0.75) - want).abs() < 1e-12);
    }

    #[test]
    fn sigma1_rejected() {
        let r = crate::resonator::build_sigma1_resonator(10.0).unwrap();
        assert!(matches!(gcd_sum(&r, 0.5), Err(ZrError::Kind(_))));
    }

    #[test]
    fn csv_grid_has_header_and_rows() {
        let rows = gcd_grid(&[3.0], &[2, 3], &[0.6]).unwrap();
        let mut buf = Vec::new();
        write_gcd_grid_csv(&rows, &mut buf).unwrap();
        let text = String::from_utf8(buf).unwrap();
        let lines: Vec<&str> = text.lines().collect();
        assert_eq!(lines.len(), 3);
        assert_eq!(lines[0], "x,ell,sigma,gcd_sum,certificate,ratio");
        assert!(lines[1].starts_with("3,2,0.6,"));
    }
}
