//! Adaptive Gauss–Kronrod (7/15) quadrature for complex-valued integrands.

use num_complex::Complex64;

use crate::sum::NeumaierComplex;

const XGK: [f64; 8] = [
    0.991_455_371_120_812_6,
    0.949_107_912_342_758_5,
    0.864_864_423_359_769_1,
    0.741_531_185_599_394_4,
    0.586_087_235_467_691_1,
    0.405_845_151_377_397_2,
    0.207_784_955_007_898_5,
    0.0,
];
const WGK: [f64; 8] = [
    0.022_935_322_010_529_22,
    0.063_092_092_629_978_55,
    0.104_790_010_322_250_2,
    0.140_653_259_715_525_9,
    0.169_004_726_639_267_9,
    0.190_350_578_064_785_4,
    0.204_432_940_075_298_9,
    0.209_482_141_084_727_8,
];
// Gauss weights on the odd Kronrod nodes XGK[1], XGK[3], XGK[5], XGK[7].
const WG: [f64; 4] = [
    0.129_484_966_168_869_7,
    0.279_705_391_489_276_7,
    0.381_830_050_505_118_9,
    0.417_959_183_673_469_4,
];

const MAX_DEPTH: u32 = 40;

fn gk15<F: Fn(f64) -> Complex64>(f: &F, a: f64, b: f64) -> (Complex64, f64) {
    let c = 0.5 * (a + b);
    let h = 0.5 * (b - a);
    let fc = f(c);
    let mut kron = fc * WGK[7];
    let mut gauss = fc * WG[3];
    for j in 0..7 {
        let dx = h * XGK[j];
        let pair = f(c - dx) + f(c + dx);
        kron += pair * WGK[j];
        if j % 2 == 1 {
            gauss += pair * WG[j / 2];
        }
    }
    let k = kron * h;
    let g = gauss * h;
    (k, (k - g).norm())
}

#[allow(clippy::too_many_arguments)]
fn adapt<F: Fn(f64) -> Complex64>(
    f: &F,
    a: f64,
    b: f64,
    whole: (Complex64, f64),
    tol: f64,
    depth: u32,
    acc: &mut NeumaierComplex,
    err: &mut f64,
) {
    let (value, estimate) = whole;
    if estimate <= tol || depth >= MAX_DEPTH || (b - a).abs() < 1e-300 {
        acc.add(value);
        *err += estimate;
        return;
    }
    let m = 0.5 * (a + b);
    let left = gk15(f, a, m);
    let right = gk15(f, m, b);
    adapt(f, a, m, left, 0.5 * tol, depth + 1, acc, err);
    adapt(f, m, b, right, 0.5 * tol, depth + 1, acc, err);
}

/// Result of an adaptive integration.
#[derive(Debug, Clone, Copy)]
pub struct Quadrature {
    pub value: Complex64,
    pub error_estimate: f64,
}

/// Integrate `f` over `[a, b]` to absolute tolerance `tol`.
pub fn integrate<F: Fn(f64) -> Complex64>(f: F, a: f64, b: f64, tol: f64) -> Quadrature {
    integrate_panels(f, a, b, 1, tol)
}

/// Integrate over `[a, b]` split into `panels` equal pieces, each refined
/// adaptively. Oscillatory integrands over long ranges need the initial split.
pub fn integrate_panels<F: Fn(f64) -> Complex64>(
    f: F,
    a: f64,
    b: f64,
    panels: usize,
    tol: f64,
) -> Quadrature {
    let panels = panels.max(1);
    let width = (b - a) / panels as f64;
    let per_panel = tol / panels as f64;
    let mut acc = NeumaierComplex::new();
    let mut err = 0.0;
    for i in 0..panels {
        let lo = a + width * i as f64;
        let hi = if i + 1 == panels { b } else { lo + width };
        let whole = gk15(&f, lo, hi);
        adapt(&f, lo, hi, whole, per_panel, 0, &mut acc, &mut err);
    }
    Quadrature {
        value: acc.value(),
        error_estimate: err,
    }
}

/// Real-valued convenience wrapper.
pub fn integrate_real<F: Fn(f64) -> f64>(f: F, a: f64, b: f64, panels: usize, tol: f64) -> f64 {
    integrate_panels(|x| Complex64::new(f(x), 0.0), a, b, panels, tol)
        .value
        .re
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::PI;

    #[test]
    fn polynomial_is_exact() {
        let q = integrate(|x| Complex64::new(x.powi(6) - 2.0 * x, 0.0), 0.0, 2.0, 1e-14);
        assert!((q.value.re - (128.0 / 7.0 - 4.0)).abs() < 1e-12);
    }

    #[test]
    fn gaussian_integral() {
        let v = integrate_real(|x| (-x * x / 2.0).exp(), -12.0, 12.0, 8, 1e-14);
        assert!((v - (2.0 * PI).sqrt()).abs() < 1e-12);
    }

    #[test]
    fn oscillatory_complex() {
        // ∫_0^{10} e^{3ix} dx = (e^{30i} - 1) / (3i)
        let q = integrate_panels(|x| Complex64::new(0.0, 3.0 * x).exp(), 0.0, 10.0, 10, 1e-13);
        let exact = (Complex64::new(0.0, 30.0).exp() - 1.0) / Complex64::new(0.0, 3.0);
        assert!((q.value - exact).norm() < 1e-12);
    }
}
