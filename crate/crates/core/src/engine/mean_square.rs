//! Discrete mean square of ζ on the critical line and Gallagher's inequality.

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{Result, ZrError};
use crate::quad::integrate_real;
use crate::sum::Neumaier;
use crate::zeta::{ProgressionSpec, ZetaEvaluator};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct MeanSquare {
    /// Σ_{ℓ ≤ N} |ζ(1/2 + iαℓ)|².
    pub raw: f64,
    /// raw / (N (log N)^{3/2}).
    pub normalized: f64,
    /// raw / (N log N).
    pub per_nlogn: f64,
}

pub fn discrete_mean_square(alpha: f64, n: u64, precision: f64) -> Result<MeanSquare> {
    if n < 10 {
        return Err(ZrError::range("N must be at least 10"));
    }
    let prog = ProgressionSpec::homogeneous(0.5, alpha)?;
    let samples = ZetaEvaluator::default().sample_progression(&prog, 1, n, precision)?;
    let raw = samples
        .iter()
        .map(|s| s.modulus * s.modulus)
        .collect::<Neumaier>()
        .value();
    let nf = n as f64;
    Ok(MeanSquare {
        raw,
        normalized: raw / (nf * nf.ln().powf(1.5)),
        per_nlogn: raw / (nf * nf.ln()),
    })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct GallagherCheck {
    /// Σ_{A+1 ≤ n ≤ B−1} |f(n)|².
    pub lhs: f64,
    /// ∫_A^B |f|².
    pub integral_f: f64,
    /// (∫|f|² ∫|f′|²)^{1/2}.
    pub cross_term: f64,
    /// lhs / (integral_f + cross_term), 0 when lhs = 0.
    pub ratio: f64,
}

pub fn gallagher_check<F, G>(f: F, f_prime: G, a: f64, b: f64) -> Result<GallagherCheck>
where
    F: Fn(f64) -> Complex64,
    G: Fn(f64) -> Complex64,
{
    if !(b > a + 2.0) || !a.is_finite() || !b.is_finite() {
        return Err(ZrError::range(format!("need B > A + 2, got A = {a}, B = {b}")));
    }
    let lhs = ((a + 1.0).ceil() as i64..=(b - 1.0).floor() as i64)
        .map(|n| f(n as f64).norm_sqr())
        .collect::<Neumaier>()
        .value();
    let panels = ((b - a) * 4.0).ceil() as usize;
    let integral_f = integrate_real(|t| f(t).norm_sqr(), a, b, panels, 1e-12);
    let integral_fp = integrate_real(|t| f_prime(t).norm_sqr(), a, b, panels, 1e-12);
    let cross_term = (integral_f * integral_fp).sqrt();
    let ratio = if lhs == 0.0 {
        0.0
    } else {
        lhs / (integral_f + cross_term)
    };
    Ok(GallagherCheck {
        lhs,
        integral_f,
        cross_term,
        ratio,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::zeta::{zeta, EvalPoint};

    #[test]
    fn constant_function() {
        let one = |_: f64| Complex64::new(1.0, 0.0);
        let zero = |_: f64| Complex64::new(0.0, 0.0);
        let g = gallagher_check(one, zero, 0.0, 10.0).unwrap();
        assert_eq!(g.lhs, 9.0);
        assert!((g.integral_f - 10.0).abs() < 1e-12);
        assert_eq!(g.cross_term, 0.0);
        assert!((g.ratio - 0.9).abs() < 1e-12);
    }

    #[test]
    fn sine() {
        let g = gallagher_check(
            |t| Complex64::new(t.sin(), 0.0),
            |t| Complex64::new(t.cos(), 0.0),
            0.0,
            20.0,
        )
        .unwrap();
        assert!(g.ratio > 0.0 && g.ratio <= 10.0);
    }

    #[test]
    fn degenerate() {
        let zero = |_: f64| Complex64::new(0.0, 0.0);
        let g = gallagher_check(zero, zero, 0.0, 2.5).unwrap();
        assert_eq!((g.lhs, g.ratio), (0.0, 0.0));
        assert!(gallagher_check(zero, zero, 0.0, 2.0).is_err());
    }

    #[test]
    fn mean_square_small() {
        let m = discrete_mean_square(1.0, 10, 1e-10).unwrap();
        let want: f64 = (1..=10)
            .map(|l| zeta(EvalPoint::new(0.5, l as f64).unwrap(), 1e-12).unwrap().norm_sqr())
            .sum();
        assert!((m.raw - want).abs() < 1e-8 * want);
        let m = discrete_mean_square(0.5, 10, 1e-10).unwrap();
        let first = zeta(EvalPoint::new(0.5, 0.5).unwrap(), 1e-12).unwrap().norm_sqr();
        assert!(m.raw > first);
        assert!(discrete_mean_square(1.0, 9, 1e-10).is_err());
    }
}
