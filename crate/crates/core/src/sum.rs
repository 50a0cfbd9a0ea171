//! Compensated accumulation.
//!
//! Parallel reductions split the input into fixed-size chunks, sum each chunk
//! with Neumaier compensation and combine the chunk partials in chunk order.
//! The chunk size does not depend on the thread count, so results are
//! bit-identical for any pool size.

use num_complex::Complex64;
use rayon::prelude::*;

/// Items per chunk in [`par_sum`] / [`par_sum_complex`].
pub const CHUNK: usize = 4096;

/// Neumaier's variant of Kahan summation.
#[derive(Debug, Clone, Copy, Default)]
pub struct Neumaier {
    sum: f64,
    comp: f64,
}

impl Neumaier {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, x: f64) {
        let t = self.sum + x;
        if self.sum.abs() >= x.abs() {
            self.comp += (self.sum - t) + x;
        } else {
            self.comp += (x - t) + self.sum;
        }
        self.sum = t;
    }

    #[inline]
    pub fn value(&self) -> f64 {
        self.sum + self.comp
    }
}

impl FromIterator<f64> for Neumaier {
    fn from_iter<I: IntoIterator<Item = f64>>(iter: I) -> Self {
        let mut acc = Neumaier::new();
        for x in iter {
            acc.add(x);
        }
        acc
    }
}

/// Componentwise compensated complex accumulator.
#[derive(Debug, Clone, Copy, Default)]
pub struct NeumaierComplex {
    re: Neumaier,
    im: Neumaier,
}

impl NeumaierComplex {
    pub fn new() -> Self {
        Self::default()
    }

    #[inline]
    pub fn add(&mut self, z: Complex64) {
        self.re.add(z.re);
        self.im.add(z.im);
    }

    #[inline]
    pub fn value(&self) -> Complex64 {
        Complex64::new(self.re.value(), self.im.value())
    }
}

impl FromIterator<Complex64> for NeumaierComplex {
    fn from_iter<I: IntoIterator<Item = Complex64>>(iter: I) -> Self {
        let mut acc = NeumaierComplex::new();
        for z in iter {
            acc.add(z);
        }
        acc
    }
}

pub fn sum(xs: impl IntoIterator<Item = f64>) -> f64 {
    xs.into_iter().collect::<Neumaier>().value()
}

pub fn sum_complex(zs: impl IntoIterator<Item = Complex64>) -> Complex64 {
    zs.into_iter().collect::<NeumaierComplex>().value()
}

/// Deterministic parallel sum of `f(i)` for `i` in `0..len`.
pub fn par_sum<F>(len: usize, f: F) -> f64
where
    F: Fn(usize) -> f64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<f64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            (lo..hi).map(&f).collect::<Neumaier>().value()
        })
        .collect();
    sum(partials)
}

/// Complex counterpart of [`par_sum`].
pub fn par_sum_complex<F>(len: usize, f: F) -> Complex64
where
    F: Fn(usize) -> Complex64 + Sync,
{
    let chunks = len.div_ceil(CHUNK);
    let partials: Vec<Complex64> = (0..chunks)
        .into_par_iter()
        .map(|c| {
            let lo = c * CHUNK;
            let hi = (lo + CHUNK).min(len);
            (lo..hi).map(&f).collect::<NeumaierComplex>().value()
        })
        .collect();
    sum_complex(partials)
}
