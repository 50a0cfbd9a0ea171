use num_complex::Complex64;

use super::euler_maclaurin::pow_neg;
use super::EvalPoint;
use crate::error::{Result, ZrError};
use crate::primes::{largest_prime_factor, primes_le};
use crate::sum::NeumaierComplex;

/// Boundary term of the truncated approximate functional equation.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum AfeBoundary {
    /// T^{1−s}/(1−s); decays like T^{−σ} for |t| ≤ T/2.
    #[default]
    Standard,
    /// T^{1/2−it}/(1/2−it); agrees with `Standard` on σ = 1/2.
    CriticalExponent,
}

/// Σ_{n ≤ T} n^{−s} − T^{1−s}/(1−s), without any error correction.
pub fn zeta_afe(p: EvalPoint, big_t: f64) -> Result<Complex64> {
    zeta_afe_with(p, big_t, AfeBoundary::Standard)
}

pub fn zeta_afe_with(p: EvalPoint, big_t: f64, boundary: AfeBoundary) -> Result<Complex64> {
    let (sigma, t) = (p.sigma(), p.t());
    if !(sigma > 0.0 && sigma < 1.0) {
        return Err(ZrError::range(format!("sigma = {sigma} outside (0, 1)")));
    }
    if !(1.0 <= t.abs() && t.abs() <= big_t) {
        return Err(ZrError::range(format!("|t| = {} outside [1, T = {big_t}]", t.abs())));
    }
    let s = p.s();
    let n_max = big_t.floor() as u64;
    let main: NeumaierComplex = (1..=n_max).map(|n| pow_neg(n as f64, s)).collect();
    let exponent = match boundary {
        AfeBoundary::Standard => Complex64::new(1.0, 0.0) - s,
        AfeBoundary::CriticalExponent => Complex64::new(0.5, -t),
    };
    let edge = (exponent * big_t.ln()).exp() / exponent;
    Ok(main.value() - edge)
}

/// ζ(1 + it; y) = ∏_{p ≤ y} (1 − p^{−1−it})^{−1}.
pub fn truncated_euler_product(t: f64, y: f64) -> Result<Complex64> {
    if !(y >= 2.0) {
        return Err(ZrError::range(format!("y = {y} must be at least 2")));
    }
    let s = Complex64::new(1.0, t);
    let mut prod = Complex64::new(1.0, 0.0);
    for &p in primes_le(y).iter() {
        prod /= Complex64::new(1.0, 0.0) - pow_neg(p as f64, s);
    }
    Ok(prod)
}

/// Dirichlet coefficient a_{k,y} of ζ(1 + it; y): 1/k when k is y-smooth.
pub fn euler_coefficient(k: u64, y: f64) -> f64 {
    if k == 0 {
        return 0.0;
    }
    if (largest_prime_factor(k) as f64) <= y || k == 1 {
        1.0 / k as f64
    } else {
        0.0
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn euler_product_small_cases() {
        let v = truncated_euler_product(0.0, 10.0).unwrap();
        assert!((v.re - 35.0 / 8.0).abs() < 1e-14 && v.im == 0.0);
        let v = truncated_euler_product(0.0, 2.0).unwrap();
        assert!((v.re - 2.0).abs() < 1e-15);
        assert!(truncated_euler_product(1.0, 1.9).is_err());
    }

    #[test]
    fn coefficients() {
        assert_eq!(euler_coefficient(1, 2.0), 1.0);
        assert_eq!(euler_coefficient(12, 3.0), 1.0 / 12.0);
        assert_eq!(euler_coefficient(14, 5.0), 0.0);
        assert_eq!(euler_coefficient(14, 7.0), 1.0 / 14.0);
    }

    #[test]
    fn afe_one_term_case() {
        let p = EvalPoint::new(0.75, 1.0).unwrap();
        let printed = zeta_afe_with(p, 1.0, AfeBoundary::CriticalExponent).unwrap();
        let expected = Complex64::new(1.0, 0.0) - Complex64::new(1.0, 0.0) / Complex64::new(0.5, -1.0);
        assert!((printed - expected).norm() < 1e-15);
        let standard = zeta_afe(p, 1.0).unwrap();
        let expected = Complex64::new(1.0, 0.0) - Complex64::new(1.0, 0.0) / Complex64::new(0.25, -1.0);
        assert!((standard - expected).norm() < 1e-15);
    }

    #[test]
    fn afe_range_errors() {
        let p = EvalPoint::new(0.75, 0.5).unwrap();
        assert!(zeta_afe(p, 10.0).is_err());
        let p = EvalPoint::new(0.75, 20.0).unwrap();
        assert!(zeta_afe(p, 10.0).is_err());
        let p = EvalPoint::new(1.0, 2.0).unwrap();
        assert!(zeta_afe(p, 10.0).is_err());
    }
}
