//! Riemann–Siegel formula on the critical line.
//!
//! Z(t) = 2 Σ_{n ≤ m} n^{-1/2} cos(θ(t) − t log n) + remainder, where the
//! remainder carries Gabcke's correction terms C_0..C_4 and
//! ζ(1/2 + it) = e^{−iθ(t)} Z(t).

use std::f64::consts::PI;

use num_complex::Complex64;

use crate::sum::Neumaier;

/// Smallest `t` accepted by this path.
pub const MIN_T: f64 = 200.0;

const CONTOUR_POINTS: usize = 64;

/// Riemann–Siegel theta function via its Stirling expansion (t ≥ MIN_T).
pub fn theta(t: f64) -> f64 {
    let t2 = t * t;
    let t3 = t2 * t;
    0.5 * t * (t / (2.0 * PI)).ln() - 0.5 * t - PI / 8.0
        + 1.0 / (48.0 * t)
        + 7.0 / (5760.0 * t3)
        + 31.0 / (80640.0 * t3 * t2)
        + 127.0 / (430080.0 * t3 * t2 * t2)
}

fn psi(z: Complex64) -> Complex64 {
    let two_pi = 2.0 * PI;
    ((z * z - z - 1.0 / 16.0) * two_pi).cos() / (z * two_pi).cos()
}

/// Taylor coefficients Ψ^{(k)}(p)/k! for k = 0..=12 from the Cauchy integral
/// on a circle around `p`. Ψ is entire, so the trapezoidal rule on the circle
/// converges geometrically; the radius keeps the real crossings of the circle
/// away from the removable points p ∈ 1/4 + ℤ/2.
fn psi_taylor(p: f64) -> [f64; 13] {
    let radius = [0.30, 0.375, 0.45, 0.2]
        .into_iter()
        .max_by(|&a, &b| crossing_gap(p, a).total_cmp(&crossing_gap(p, b)))
        .unwrap_or(0.3);
    let values: Vec<Complex64> = (0..CONTOUR_POINTS)
        .map(|j| {
            let phi = 2.0 * PI * j as f64 / CONTOUR_POINTS as f64;
            psi(Complex64::new(p, 0.0) + Complex64::from_polar(radius, phi))
        })
        .collect();
    let mut out = [0.0; 13];
    for (k, slot) in out.iter_mut().enumerate() {
        let mut acc = Neumaier::new();
        for (j, v) in values.iter().enumerate() {
            let phi = 2.0 * PI * (j * k) as f64 / CONTOUR_POINTS as f64;
            acc.add((v * Complex64::from_polar(1.0, -phi)).re);
        }
        *slot = acc.value() / CONTOUR_POINTS as f64 / radius.powi(k as i32);
    }
    out
}

fn crossing_gap(p: f64, r: f64) -> f64 {
    let gap = |x: f64| {
        let u = (x - 0.25).rem_euclid(0.5);
        u.min(0.5 - u)
    };
    gap(p + r).min(gap(p - r))
}

/// Correction coefficients C_0..C_4 at fractional part `p`.
pub fn corrections(p: f64) -> [f64; 5] {
    let c = psi_taylor(p);
    let fact = |k: usize| (1..=k).map(|i| i as f64).product::<f64>();
    let d = |k: usize| c[k] * fact(k);
    let pi2 = PI * PI;
    let pi4 = pi2 * pi2;
    let pi6 = pi4 * pi2;
    let pi8 = pi4 * pi4;
    [
        d(0),
        -d(3) / (96.0 * pi2),
        d(2) / (64.0 * pi2) + d(6) / (18432.0 * pi4),
        -d(1) / (64.0 * pi2) - d(5) / (3840.0 * pi4) - d(9) / (5_308_416.0 * pi6),
        d(0) / (128.0 * pi2)
            + 19.0 * d(4) / (24576.0 * pi4)
            + 11.0 * d(8) / (5_898_240.0 * pi6)
            + d(12) / (2_038_431_744.0 * pi8),
    ]
}

/// Hardy's Z(t) and a bound on the omitted C_5 term.
pub fn hardy_z(t: f64) -> (f64, f64) {
    debug_assert!(t >= MIN_T);
    let a = (t / (2.0 * PI)).sqrt();
    let m = a.floor() as u64;
    let p = a - m as f64;
    let th = theta(t);
    let mut acc = Neumaier::new();
    for n in 1..=m {
        let nf = n as f64;
        acc.add((th - t * nf.ln()).cos() / nf.sqrt());
    }
    let main = 2.0 * acc.value();
    let c = corrections(p);
    let w = a.recip(); // (t/2π)^{-1/2}
    let mut rem = 0.0;
    let mut wk = 1.0;
    for ck in c {
        rem += ck * wk;
        wk *= w;
    }
    let sign = if m % 2 == 1 { 1.0 } else { -1.0 };
    let scale = w.sqrt(); // (t/2π)^{-1/4}
    let z = main + sign * scale * rem;
    // |C_5| stays well below 1e-3; 1e-2 keeps the estimate conservative.
    let bound = 1e-2 * scale * wk;
    (z, bound)
}

/// ζ(1/2 + it) for t ≥ MIN_T with a truncation bound.
pub fn zeta_critical(t: f64) -> (Complex64, f64) {
    let (z, bound) = hardy_z(t);
    (Complex64::from_polar(z, -theta(t)), bound)
}
