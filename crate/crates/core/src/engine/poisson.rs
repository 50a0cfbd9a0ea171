//! Numerical check of Σ f(ℓ + a) = Σ f̂(ℓ) e^{2πiℓa}.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::sum::{Neumaier, NeumaierComplex};

/// f(x) = e^{−πx²/w²} with f̂(ξ) = w·e^{−πw²ξ²}.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct GaussianFamily {
    pub width: f64,
}

impl GaussianFamily {
    pub const SELF_DUAL: Self = Self { width: 1.0 };
    /// e^{−x²/2}, the weight used in the moment computations.
    pub const STANDARD: Self = Self {
        width: 2.506_628_274_631_000_5,
    };

    pub fn f(&self, x: f64) -> f64 {
        (-PI * x * x / (self.width * self.width)).exp()
    }

    pub fn f_hat(&self, xi: f64) -> f64 {
        self.width * (-PI * self.width * self.width * xi * xi).exp()
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct PoissonCheck {
    pub lhs: f64,
    pub rhs: Complex64,
    pub gap: f64,
}

pub fn poisson_check(f: GaussianFamily, a: f64, truncation: u32) -> PoissonCheck {
    let n = truncation as i64;
    let lhs = (-n..=n)
        .map(|l| f.f(l as f64 + a))
        .collect::<Neumaier>()
        .value();
    let rhs = (-n..=n)
        .map(|l| f.f_hat(l as f64) * Complex64::from_polar(1.0, 2.0 * PI * l as f64 * a))
        .collect::<NeumaierComplex>()
        .value();
    PoissonCheck {
        lhs,
        rhs,
        gap: (rhs - lhs).norm(),
    }
}
