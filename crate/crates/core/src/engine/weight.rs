//! Test weights Φ and their Fourier transforms Φ̂(ξ) = ∫ Φ(x) e^{−2πiξx} dx.

use std::f64::consts::PI;
use std::sync::OnceLock;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

/// Fraction of the peak below which sums over a weight are truncated.
pub const TRUNCATION: f64 = 1e-16;

const SQRT_TAU: f64 = 2.506_628_274_631_000_5;

/// Trapezoid nodes on the half-support [0, 1/2] of the bump.
const BUMP_NODES: usize = 2048;

/// |Φ̂_bump(ξ)| stays below 1e−17 beyond this radius.
const BUMP_HAT_RADIUS: f64 = 400.0;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum WeightFunction {
    /// Φ(x) = e^{−x²/2}.
    Gaussian,
    /// c·exp(−1/(1 − (2x − 3)²)) on (1, 2), with ∫Φ = 1.
    Bump12,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct WeightValues {
    pub phi: f64,
    pub phi_hat: Complex64,
}

struct BumpTable {
    c: f64,
    /// Trapezoid weights times Φ(3/2 + u_i), u_i = i·h.
    nodes: Vec<f64>,
    h: f64,
}

fn bump_shape(v: f64) -> f64 {
    let d = 1.0 - v * v;
    if d <= 0.0 {
        0.0
    } else {
        (-1.0 / d).exp()
    }
}

fn bump_table() -> &'static BumpTable {
    static TABLE: OnceLock<BumpTable> = OnceLock::new();
    TABLE.get_or_init(|| {
        let h = 0.5 / BUMP_NODES as f64;
        // Φ is flat to all orders at the ends, so the trapezoid rule on the
        // symmetric half converges faster than any power of h.
        let raw: Vec<f64> = (0..=BUMP_NODES)
            .map(|i| {
                let w = if i == 0 { 1.0 } else { 2.0 };
                w * h * bump_shape(2.0 * i as f64 * h)
            })
            .collect();
        let c = 1.0 / crate::sum::sum(raw.iter().copied());
        let nodes = raw.into_iter().map(|v| v * c).collect();
        BumpTable { c, nodes, h }
    })
}

impl WeightFunction {
    /// Constant multiplying the unnormalized shape.
    pub fn normalization(self) -> f64 {
        match self {
            Self::Gaussian => 1.0,
            Self::Bump12 => bump_table().c,
        }
    }

    pub fn phi(self, x: f64) -> f64 {
        match self {
            Self::Gaussian => (-0.5 * x * x).exp(),
            Self::Bump12 => {
                if x <= 1.0 || x >= 2.0 {
                    0.0
                } else {
                    bump_table().c * bump_shape(2.0 * x - 3.0)
                }
            }
        }
    }

    pub fn phi_hat(self, xi: f64) -> Complex64 {
        match self {
            Self::Gaussian => Complex64::new(SQRT_TAU * (-2.0 * PI * PI * xi * xi).exp(), 0.0),
            Self::Bump12 => {
                if xi.abs() > BUMP_HAT_RADIUS {
                    return Complex64::new(0.0, 0.0);
                }
                // Φ is symmetric about 3/2: Φ̂(ξ) = e^{−3πiξ} ∫ Φ(3/2 + u) cos(2πξu) du.
                let table = bump_table();
                let step = Complex64::from_polar(1.0, 2.0 * PI * xi * table.h);
                let mut z = Complex64::new(1.0, 0.0);
                let mut acc = crate::sum::Neumaier::new();
                for (i, &w) in table.nodes.iter().enumerate() {
                    if i % 256 == 0 {
                        z = Complex64::from_polar(1.0, 2.0 * PI * xi * table.h * i as f64);
                    }
                    acc.add(w * z.re);
                    z *= step;
                }
                Complex64::from_polar(acc.value(), -3.0 * PI * xi)
            }
        }
    }

    pub fn values(self, x: f64) -> WeightValues {
        WeightValues {
            phi: self.phi(x),
            phi_hat: self.phi_hat(x),
        }
    }

    /// Radius beyond which |Φ̂| is below `TRUNCATION`·Φ̂(0).
    pub fn hat_radius(self) -> f64 {
        match self {
            Self::Gaussian => (-TRUNCATION.ln()).sqrt() / (PI * 2f64.sqrt()),
            Self::Bump12 => BUMP_HAT_RADIUS,
        }
    }

    /// Smallest R with Φ(x) < `TRUNCATION` for |x| > R (support bound for the bump).
    pub fn phi_radius(self) -> f64 {
        match self {
            Self::Gaussian => (-2.0 * TRUNCATION.ln()).sqrt(),
            Self::Bump12 => 2.0,
        }
    }
}

/// Φ and Φ̂ at `x`.
pub fn weight_and_transform(w: WeightFunction, x: f64) -> WeightValues {
    w.values(x)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quad::integrate_panels;

    #[test]
    fn gaussian_closed_forms() {
        let v = weight_and_transform(WeightFunction::Gaussian, 0.0);
        assert_eq!(v.phi, 1.0);
        assert!((v.phi_hat.re - (2.0 * PI).sqrt()).abs() < 1e-15);
        let v = weight_and_transform(WeightFunction::Gaussian, 1.0);
        assert!((v.phi_hat.re - 6.7e-9).abs() < 0.05e-9);
    }

    #[test]
    fn gaussian_transform_matches_quadrature() {
        let w = WeightFunction::Gaussian;
        for i in -30..=30 {
            let xi = i as f64 / 10.0;
            let q = integrate_panels(
                |x| w.phi(x) * Complex64::from_polar(1.0, -2.0 * PI * xi * x),
                -12.0,
                12.0,
                48,
                1e-14,
            );
            assert!((q.value - w.phi_hat(xi)).norm() < 1e-10, "xi={xi}");
        }
    }

    #[test]
    fn bump_basics() {
        let w = WeightFunction::Bump12;
        let v = weight_and_transform(w, 0.0);
        assert_eq!(v.phi, 0.0);
        assert!((v.phi_hat - Complex64::new(1.0, 0.0)).norm() < 1e-14);
        assert_eq!(w.phi(1.0), 0.0);
        assert_eq!(w.phi(2.0), 0.0);
        assert!(w.phi(1.5) > 0.0);
        assert!((w.phi(1.25) - w.phi(1.75)).abs() < 1e-15);
        // 2/∫exp(−1/(1−v²))dv with the integral 0.44399381616807943782
        assert!((w.normalization() - 2.0 / 0.443_993_816_168_079_4).abs() < 1e-12);
    }

    #[test]
    fn bump_transform_matches_quadrature() {
        let w = WeightFunction::Bump12;
        for &xi in &[-7.3, -2.0, -0.5, 0.25, 1.0, 3.3, 20.0, 75.5] {
            let q = integrate_panels(
                |x| w.phi(x) * Complex64::from_polar(1.0, -2.0 * PI * xi * x),
                1.0,
                2.0,
                64,
                1e-12,
            );
            assert!((q.value - w.phi_hat(xi)).norm() < 1e-10, "xi={xi}");
        }
        // reference values of e^{3πiξ}Φ̂(ξ) from a 40-digit computation
        for &(xi, want) in &[
            (1.0, 0.406_548_218_726_181_95),
            (10.0, 0.001_290_749_243_364_821),
            (200.0, 2.389_336_204_525_226e-13),
        ] {
            let got = w.phi_hat(xi) * Complex64::from_polar(1.0, 3.0 * PI * xi);
            assert!((got.re - want).abs() < 1e-14 && got.im.abs() < 1e-14, "xi={xi}");
        }
    }

    #[test]
    fn bump_transform_is_hermitian() {
        let w = WeightFunction::Bump12;
        for &xi in &[0.3, 2.7, 13.0] {
            assert!((w.phi_hat(-xi) - w.phi_hat(xi).conj()).norm() < 1e-14);
        }
    }

    #[test]
    fn radii() {
        let g = WeightFunction::Gaussian;
        assert!(g.phi(g.phi_radius()) <= TRUNCATION * 1.000_001);
        assert!(g.phi_hat(g.hat_radius()).re <= TRUNCATION * SQRT_TAU * 1.000_001);
    }
}
