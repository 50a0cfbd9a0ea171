//! Resonating Dirichlet polynomials R(t) = Σ r(n) n^{it}.
//!
//! Three families: the divisor-set resonator used inside the strip, the
//! completely multiplicative Euler-product resonator for σ = 1, and a long
//! sparse resonator for the critical line. Finite kinds carry their support
//! explicitly; the σ = 1 kind is held as prime data and evaluated as a
//! finite Euler product.

mod build;
mod factored;

pub use build::{
    build_critical_resonator, build_critical_resonator_with_cap, build_sigma1_resonator,
    build_strip_resonator, build_strip_resonator_with_cap, strip_log_m, strip_params_from_n,
    CriticalSeed, StripParams, DEFAULT_SUPPORT_CAP,
};
pub use factored::FactoredInteger;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use crate::error::{Result, ZrError};
use crate::sum::{par_sum_complex, Neumaier};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum ResonatorKind {
    Strip,
    Sigma1,
    Critical,
}

impl ResonatorKind {
    pub fn name(self) -> &'static str {
        match self {
            ResonatorKind::Strip => "strip",
            ResonatorKind::Sigma1 => "sigma1",
            ResonatorKind::Critical => "critical",
        }
    }
}

impl std::str::FromStr for ResonatorKind {
    type Err = ZrError;

    fn from_str(s: &str) -> Result<Self> {
        match s {
            "strip" => Ok(ResonatorKind::Strip),
            "sigma1" => Ok(ResonatorKind::Sigma1),
            "critical" => Ok(ResonatorKind::Critical),
            other => Err(ZrError::validation(format!("unknown resonator kind {other:?}"))),
        }
    }
}

/// Construction parameters, kept for reproducibility.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(untagged)]
pub enum ResonatorParams {
    Strip { x: f64, ell: u32 },
    Critical { t: u64, kappa: f64, seed: CriticalSeed },
    Sigma1 { x: f64 },
}

/// One support element n with coefficient r(n) > 0.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SupportEntry(pub FactoredInteger, pub f64);

impl SupportEntry {
    pub fn n(&self) -> &FactoredInteger {
        &self.0
    }

    pub fn coeff(&self) -> f64 {
        self.1
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "ResonatorDoc", into = "ResonatorDoc")]
pub struct Resonator {
    kind: ResonatorKind,
    params: ResonatorParams,
    support: Vec<SupportEntry>,
    /// (p, q_p) for the Euler-product kind; empty otherwise.
    euler: Vec<(u64, f64)>,
    norm2: f64,
}

/// On-disk JSON layout.
#[derive(Serialize, Deserialize)]
struct ResonatorDoc {
    kind: ResonatorKind,
    params: ResonatorParams,
    support: Vec<SupportEntry>,
    norm2: f64,
}

impl From<Resonator> for ResonatorDoc {
    fn from(r: Resonator) -> Self {
        ResonatorDoc {
            kind: r.kind,
            params: r.params,
            support: r.support,
            norm2: r.norm2,
        }
    }
}

impl TryFrom<ResonatorDoc> for Resonator {
    type Error = ZrError;

    fn try_from(doc: ResonatorDoc) -> Result<Self> {
        let r = match (doc.kind, &doc.params) {
            (ResonatorKind::Sigma1, &ResonatorParams::Sigma1 { x }) => build_sigma1_resonator(x)?,
            (ResonatorKind::Sigma1, _) => {
                return Err(ZrError::validation("sigma1 resonator needs params {x}"))
            }
            (kind, params) => Resonator::from_support(kind, params.clone(), doc.support)?,
        };
        let tol = 1e-12 * r.norm2.abs().max(1.0);
        if (r.norm2 - doc.norm2).abs() > tol {
            return Err(ZrError::validation(format!(
                "stored norm2 {} disagrees with support ({})",
                doc.norm2, r.norm2
            )));
        }
        Ok(r)
    }
}

impl Resonator {
    /// A finite resonator from an explicit support. Entries are sorted into
    /// support order; duplicates and non-positive coefficients are rejected.
    pub fn from_support(
        kind: ResonatorKind,
        params: ResonatorParams,
        mut support: Vec<SupportEntry>,
    ) -> Result<Self> {
        if kind == ResonatorKind::Sigma1 {
            return Err(ZrError::Kind("sigma1"));
        }
        if support.is_empty() {
            return Err(ZrError::validation("support must be non-empty"));
        }
        if let Some(bad) = support.iter().find(|e| !(e.1 > 0.0 && e.1.is_finite())) {
            return Err(ZrError::validation(format!(
                "coefficient {} is not strictly positive",
                bad.1
            )));
        }
        support.sort_by(|a, b| a.0.support_cmp(&b.0));
        if support.windows(2).any(|w| w[0].0 == w[1].0) {
            return Err(ZrError::validation("support entries must be distinct"));
        }
        let norm2 = support.iter().map(|e| e.1 * e.1).collect::<Neumaier>().value();
        Ok(Self {
            kind,
            params,
            support,
            euler: Vec::new(),
            norm2,
        })
    }

    /// The resonator R ≡ 1 (support {1}).
    pub fn trivial(kind: ResonatorKind, params: ResonatorParams) -> Self {
        Self {
            kind,
            params,
            support: vec![SupportEntry(FactoredInteger::one(), 1.0)],
            euler: Vec::new(),
            norm2: 1.0,
        }
    }

    pub(crate) fn euler_product(x: f64, euler: Vec<(u64, f64)>) -> Self {
        let norm2 = euler.iter().map(|&(_, q)| 1.0 / (1.0 - q * q)).product();
        Self {
            kind: ResonatorKind::Sigma1,
            params: ResonatorParams::Sigma1 { x },
            support: Vec::new(),
            euler,
            norm2,
        }
    }

    pub fn kind(&self) -> ResonatorKind {
        self.kind
    }

    pub fn params(&self) -> &ResonatorParams {
        &self.params
    }

    pub fn is_finite(&self) -> bool {
        self.kind != ResonatorKind::Sigma1
    }

    /// Support entries (empty for the Euler-product kind).
    pub fn support(&self) -> &[SupportEntry] {
        &self.support
    }

    /// Prime data (p, q_p) of the Euler-product kind.
    pub fn euler_data(&self) -> &[(u64, f64)] {
        &self.euler
    }

    /// Σ r(n)²; for the Euler-product kind ∏ (1 − q_p²)^{−1}.
    pub fn norm2(&self) -> f64 {
        self.norm2
    }

    /// Support size; for the Euler-product kind, the number of primes.
    pub fn card(&self) -> usize {
        if self.is_finite() {
            self.support.len()
        } else {
            self.euler.len()
        }
    }

    /// Largest log n over the support.
    pub fn log_length(&self) -> f64 {
        self.support.last().map_or(0.0, |e| e.0.log_value())
    }

    pub fn eval(&self, t: f64) -> Complex64 {
        if self.kind == ResonatorKind::Sigma1 {
            return self
                .euler
                .iter()
                .fold(Complex64::new(1.0, 0.0), |acc, &(p, q)| {
                    let phase = Complex64::from_polar(q, t * (p as f64).ln());
                    acc / (Complex64::new(1.0, 0.0) - phase)
                });
        }
        let term = |i: usize| {
            let e = &self.support[i];
            Complex64::from_polar(e.1, t * e.0.log_value())
        };
        if self.support.len() > crate::sum::CHUNK {
            par_sum_complex(self.support.len(), term)
        } else {
            crate::sum::sum_complex((0..self.support.len()).map(term))
        }
    }

    /// R(0) (real and positive).
    pub fn at_zero(&self) -> f64 {
        if self.kind == ResonatorKind::Sigma1 {
            self.euler.iter().map(|&(_, q)| 1.0 / (1.0 - q)).product()
        } else {
            self.support.iter().map(|e| e.1).collect::<Neumaier>().value()
        }
    }

    pub fn to_json(&self) -> Result<String> {
        Ok(serde_json::to_string(self)?)
    }

    pub fn from_json(s: &str) -> Result<Self> {
        Ok(serde_json::from_str(s)?)
    }
}

/// The chain |R(t)|² ≤ R(0)² ≤ #M·‖R‖².
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ResonatorStats {
    pub norm2: f64,
    pub card: usize,
    pub r0: f64,
    pub sup_bound: f64,
}

pub fn eval_resonator(r: &Resonator, t: f64) -> Complex64 {
    r.eval(t)
}

pub fn resonator_stats(r: &Resonator) -> Result<ResonatorStats> {
    if !r.is_finite() {
        return Err(ZrError::Kind("sigma1"));
    }
    let r0 = r.at_zero();
    let sup_bound = r.card() as f64 * r.norm2();
    if r0 * r0 > sup_bound * (1.0 + 1e-12) {
        return Err(ZrError::Shape(format!(
            "R(0)^2 = {} exceeds card * norm2 = {sup_bound}",
            r0 * r0
        )));
    }
    Ok(ResonatorStats {
        norm2: r.norm2(),
        card: r.card(),
        r0,
        sup_bound,
    })
}
