//! Euler–Maclaurin summation for ζ(s).

use num_complex::Complex64;

use crate::sum::NeumaierComplex;

/// B_2, B_4, ..., B_12.
const BERNOULLI: [f64; 6] = [
    1.0 / 6.0,
    -1.0 / 30.0,
    1.0 / 42.0,
    -1.0 / 30.0,
    5.0 / 66.0,
    -691.0 / 2730.0,
];

/// Correction terms used (through B_10); the B_12 term bounds the remainder.
pub const ORDER: usize = 5;

/// `(value, truncation bound)` with `n` the cut-off of the direct sum.
pub fn euler_maclaurin(s: Complex64, n: usize) -> (Complex64, f64) {
    let n = n.max(2);
    let mut acc = NeumaierComplex::new();
    for k in 1..n {
        acc.add(pow_neg(k as f64, s));
    }
    let nf = n as f64;
    let n_neg_s = pow_neg(nf, s);
    acc.add(n_neg_s * nf / (s - 1.0));
    acc.add(n_neg_s * 0.5);

    // term_k = B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    let mut poch = s;
    let mut npow = n_neg_s / nf;
    let mut fact = 2.0;
    let mut bound = 0.0;
    for k in 1..=ORDER + 1 {
        let term = poch * npow * (BERNOULLI[k - 1] / fact);
        if k <= ORDER {
            acc.add(term);
            let j = (2 * k) as f64;
            poch *= (s + (j - 1.0)) * (s + j);
            npow /= nf * nf;
            fact *= (j + 1.0) * (j + 2.0);
        } else {
            let j = (2 * k) as f64;
            bound = term.norm() * (s + (j - 1.0)).norm() / (s.re + j - 1.0);
        }
    }
    (acc.value(), bound)
}

/// `x^{-s}` for real `x > 0`.
#[inline]
pub fn pow_neg(x: f64, s: Complex64) -> Complex64 {
    let l = x.ln();
    let (sin, cos) = (-s.im * l).sin_cos();
    Complex64::new(cos, sin) * (-s.re * l).exp()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn zeta_two_and_four() {
        let (z2, b2) = euler_maclaurin(Complex64::new(2.0, 0.0), 50);
        assert!((z2.re - PI * PI / 6.0).abs() < 1e-14);
        assert!(b2 < 1e-15);
        let (z4, _) = euler_maclaurin(Complex64::new(4.0, 0.0), 50);
        assert!((z4.re - PI.powi(4) / 90.0).abs() < 1e-14);
    }

    #[test]
    fn bound_shrinks_with_terms() {
        let s = Complex64::new(0.5, 300.0);
        let (_, b1) = euler_maclaurin(s, 900);
        let (_, b2) = euler_maclaurin(s, 1800);
        assert!(b2 < b1);
    }
}
