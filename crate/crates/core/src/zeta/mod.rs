//! Reference evaluation of ζ(s) on σ ≥ 1/2 and its approximations.
//!
//! `zeta` dispatches between Euler–Maclaurin summation and (on σ = 1/2 with
//! large |t|) the Riemann–Siegel formula. Everything else in the crate that
//! needs a zeta value goes through here.

mod approx;
pub mod euler_maclaurin;
pub mod riemann_siegel;

pub use approx::{euler_coefficient, truncated_euler_product, zeta_afe, zeta_afe_with, AfeBoundary};

use num_complex::Complex64;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZrError};

/// A point s = σ + it in the evaluator's domain.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalPoint {
    sigma: f64,
    t: f64,
}

impl EvalPoint {
    pub fn new(sigma: f64, t: f64) -> Result<Self> {
        if !(0.5..=2.0).contains(&sigma) || !t.is_finite() {
            return Err(ZrError::range(format!(
                "evaluation point ({sigma}, {t}) outside sigma in [1/2, 2]"
            )));
        }
        if sigma == 1.0 && t == 0.0 {
            return Err(ZrError::Pole);
        }
        Ok(Self { sigma, t })
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn t(&self) -> f64 {
        self.t
    }

    pub fn s(&self) -> Complex64 {
        Complex64::new(self.sigma, self.t)
    }
}

/// The vertical progression σ + i(αℓ + β), ℓ = 0, 1, 2, ...
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "RawProgression", into = "RawProgression")]
pub struct ProgressionSpec {
    sigma: f64,
    alpha: f64,
    beta: f64,
}

#[derive(Serialize, Deserialize)]
struct RawProgression {
    sigma: f64,
    alpha: f64,
    beta: f64,
}

impl TryFrom<RawProgression> for ProgressionSpec {
    type Error = ZrError;

    fn try_from(r: RawProgression) -> Result<Self> {
        ProgressionSpec::new(r.sigma, r.alpha, r.beta)
    }
}

impl From<ProgressionSpec> for RawProgression {
    fn from(p: ProgressionSpec) -> Self {
        RawProgression {
            sigma: p.sigma,
            alpha: p.alpha,
            beta: p.beta,
        }
    }
}

impl ProgressionSpec {
    pub fn new(sigma: f64, alpha: f64, beta: f64) -> Result<Self> {
        if !(0.5..=1.0).contains(&sigma) {
            return Err(ZrError::range(format!("sigma = {sigma} outside [1/2, 1]")));
        }
        if !(alpha > 0.0 && alpha.is_finite()) {
            return Err(ZrError::range(format!("alpha = {alpha} must be positive")));
        }
        if !(0.0..alpha).contains(&beta) {
            return Err(ZrError::range(format!("beta = {beta} outside [0, alpha)")));
        }
        if sigma == 0.5 && beta != 0.0 {
            return Err(ZrError::Beta { beta });
        }
        Ok(Self { sigma, alpha, beta })
    }

    /// Homogeneous progression σ + iαℓ.
    pub fn homogeneous(sigma: f64, alpha: f64) -> Result<Self> {
        Self::new(sigma, alpha, 0.0)
    }

    pub fn sigma(&self) -> f64 {
        self.sigma
    }

    pub fn alpha(&self) -> f64 {
        self.alpha
    }

    pub fn beta(&self) -> f64 {
        self.beta
    }

    pub fn is_critical_line(&self) -> bool {
        self.sigma == 0.5
    }

    /// t = αℓ + β with a single rounding.
    pub fn t_at(&self, ell: i64) -> f64 {
        self.alpha.mul_add(ell as f64, self.beta)
    }
}

/// One evaluated point of a progression.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
pub struct ZetaSample {
    pub ell: u64,
    pub t: f64,
    pub value: Complex64,
    pub modulus: f64,
}

/// Which algorithm produced a value.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    EulerMaclaurin,
    RiemannSiegel,
}

/// A zeta value with its provenance.
#[derive(Debug, Clone, Copy)]
pub struct ZetaValue {
    pub value: Complex64,
    pub truncation_bound: f64,
    pub terms: usize,
    pub method: Method,
}

/// Evaluator tuning.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct ZetaConfig {
    /// |t| above which σ = 1/2 uses Riemann–Siegel.
    pub t_switch: f64,
    /// Largest admissible direct-sum length for Euler–Maclaurin.
    pub max_terms: usize,
    pub min_terms: usize,
    /// Initial direct-sum length per unit of |t|.
    pub terms_per_t: f64,
}

impl Default for ZetaConfig {
    fn default() -> Self {
        Self {
            t_switch: 1e4,
            max_terms: 50_000_000,
            min_terms: 50,
            terms_per_t: 3.0,
        }
    }
}

pub const MIN_PRECISION: f64 = 1e-14;
pub const MAX_PRECISION: f64 = 1e-4;
pub const DEFAULT_PRECISION: f64 = 1e-10;

#[derive(Debug, Clone, Copy, Default)]
pub struct ZetaEvaluator {
    pub config: ZetaConfig,
}

impl ZetaEvaluator {
    pub fn new(config: ZetaConfig) -> Self {
        Self { config }
    }

    pub fn zeta(&self, p: EvalPoint, precision_target: f64) -> Result<Complex64> {
        self.evaluate(p, precision_target).map(|v| v.value)
    }

    pub fn evaluate(&self, p: EvalPoint, precision_target: f64) -> Result<ZetaValue> {
        check_precision(precision_target)?;
        let t = p.t();
        if p.sigma() == 0.5 && t.abs() > self.config.t_switch && t.abs() >= riemann_siegel::MIN_T {
            let (v, bound) = riemann_siegel::zeta_critical(t.abs());
            if bound <= precision_target {
                let value = if t < 0.0 { v.conj() } else { v };
                return Ok(ZetaValue {
                    value,
                    truncation_bound: bound,
                    terms: (t.abs() / (2.0 * std::f64::consts::PI)).sqrt() as usize,
                    method: Method::RiemannSiegel,
                });
            }
        }
        self.euler_maclaurin(p, precision_target)
    }

    pub fn euler_maclaurin(&self, p: EvalPoint, precision_target: f64) -> Result<ZetaValue> {
        let cfg = &self.config;
        let mut n = cfg
            .min_terms
            .max((cfg.terms_per_t * p.t().abs()).ceil() as usize);
        let s = p.s();
        loop {
            if n > cfg.max_terms {
                let (_, estimate) = euler_maclaurin::euler_maclaurin(s, cfg.max_terms);
                return Err(ZrError::PrecisionUnreachable {
                    target: precision_target,
                    estimate,
                });
            }
            let (value, bound) = euler_maclaurin::euler_maclaurin(s, n);
            if bound <= 0.5 * precision_target {
                return Ok(ZetaValue {
                    value,
                    truncation_bound: bound,
                    terms: n,
                    method: Method::EulerMaclaurin,
                });
            }
            n = n.saturating_mul(2);
        }
    }

    pub fn sample_progression(
        &self,
        prog: &ProgressionSpec,
        ell_lo: u64,
        ell_hi: u64,
        precision_target: f64,
    ) -> Result<Vec<ZetaSample>> {
        check_precision(precision_target)?;
        if ell_lo > ell_hi {
            return Ok(Vec::new());
        }
        let ells: Vec<u64> = (ell_lo..=ell_hi).collect();
        self.sample_at(prog, &ells, precision_target)
    }

    /// Evaluate at an arbitrary list of ℓ; output follows input order.
    pub fn sample_at(
        &self,
        prog: &ProgressionSpec,
        ells: &[u64],
        precision_target: f64,
    ) -> Result<Vec<ZetaSample>> {
        check_precision(precision_target)?;
        let results: Vec<Result<ZetaSample>> = ells
            .par_iter()
            .map(|&ell| self.sample_one(prog, ell, precision_target))
            .collect();
        results.into_iter().collect()
    }

    pub fn sample_one(&self, prog: &ProgressionSpec, ell: u64, precision_target: f64) -> Result<ZetaSample> {
        let t = prog.t_at(ell as i64);
        let wrap = |e: ZrError| ZrError::Sample {
            ell,
            source: Box::new(e),
        };
        let p = EvalPoint::new(prog.sigma(), t).map_err(wrap)?;
        let value = self.zeta(p, precision_target).map_err(wrap)?;
        Ok(ZetaSample {
            ell,
            t,
            value,
            modulus: value.norm(),
        })
    }
}

fn check_precision(target: f64) -> Result<()> {
    if !(MIN_PRECISION..=MAX_PRECISION).contains(&target) {
        return Err(ZrError::range(format!(
            "precision target {target:e} outside [1e-14, 1e-4]"
        )));
    }
    Ok(())
}

/// ζ(σ + it) with the default evaluator.
pub fn zeta(p: EvalPoint, precision_target: f64) -> Result<Complex64> {
    ZetaEvaluator::default().zeta(p, precision_target)
}

/// Samples ζ along `prog` for ℓ in `[ell_lo, ell_hi]` with the default evaluator.
pub fn sample_progression(
    prog: &ProgressionSpec,
    ell_lo: u64,
    ell_hi: u64,
    precision_target: f64,
) -> Result<Vec<ZetaSample>> {
    ZetaEvaluator::default().sample_progression(prog, ell_lo, ell_hi, precision_target)
}
