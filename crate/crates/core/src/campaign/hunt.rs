//! Resonance-guided search for large |ζ| along a progression.

use std::sync::atomic::{AtomicBool, Ordering};
use std::time::Instant;

use rand::seq::index::sample;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::bounds::{theorem_bound, Bound, BoundValue, C_MAX};
use crate::error::{Result, ZrError};
use crate::resonator::{
    build_critical_resonator, build_sigma1_resonator, build_strip_resonator, strip_params_from_n, CriticalSeed,
    Resonator,
};
use crate::zeta::{ProgressionSpec, ZetaEvaluator, ZetaSample, MIN_PRECISION};

/// Largest candidate range a hunt accepts.
pub const CANDIDATE_CAP: f64 = 1e8;

const PHASE2_BATCH: usize = 64;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
pub enum RangeMode {
    /// N ≤ ℓ ≤ 2N.
    #[serde(rename = "thm11")]
    Thm11,
    /// √N ≤ ℓ ≤ N log N.
    #[serde(rename = "thm12_13")]
    Thm12_13,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "kind", rename_all = "lowercase")]
pub enum ResonatorChoice {
    /// Parameters derived from N: strip from δ, critical with T = N, or sigma1
    /// with x = log N / (6 log log N).
    Auto,
    Strip { x: f64, ell: u32 },
    Sigma1 { x: f64 },
    Critical { kappa: f64, gamma: f64, classes: u32 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntConfig {
    pub prog: ProgressionSpec,
    #[serde(rename = "N")]
    pub n: u64,
    pub range_mode: RangeMode,
    pub resonator: ResonatorChoice,
    pub delta: f64,
    pub c: f64,
    pub precision_target: f64,
    pub seed: u64,
    pub top_fraction: f64,
    pub random_fraction: f64,
    pub output_path: Option<String>,
}

impl HuntConfig {
    pub fn new(prog: ProgressionSpec, n: u64, range_mode: RangeMode) -> Self {
        Self {
            prog,
            n,
            range_mode,
            resonator: ResonatorChoice::Auto,
            delta: 0.35,
            c: 0.7,
            precision_target: 1e-10,
            seed: 0x5eed,
            top_fraction: 0.01,
            random_fraction: 0.001,
            output_path: None,
        }
    }

    pub fn validate(&self) -> Result<()> {
        if self.n < 16 {
            return Err(ZrError::range("N must be at least 16"));
        }
        if !(self.c > 0.0 && self.c < C_MAX) {
            return Err(ZrError::range(format!("c = {} must lie in (0, 1/sqrt 2)", self.c)));
        }
        if !(self.delta > 0.0 && self.delta < 0.5) {
            return Err(ZrError::range(format!("delta = {} outside (0, 1/2)", self.delta)));
        }
        for (name, f) in [("top_fraction", self.top_fraction), ("random_fraction", self.random_fraction)] {
            if !(0.0..=1.0).contains(&f) {
                return Err(ZrError::range(format!("{name} = {f} outside [0, 1]")));
            }
        }
        if self.range_mode == RangeMode::Thm12_13 {
            let s = self.prog.sigma();
            if s != 0.5 && s != 1.0 {
                return Err(ZrError::validation(format!(
                    "range thm12_13 needs sigma = 1/2 or 1, got {s}"
                )));
            }
            if self.prog.beta() != 0.0 {
                return Err(ZrError::Beta { beta: self.prog.beta() });
            }
        } else if !(self.prog.sigma() > 0.5 && self.prog.sigma() < 1.0) {
            return Err(ZrError::validation("range thm11 needs 1/2 < sigma < 1"));
        }
        Ok(())
    }

    /// Inclusive ℓ-range searched.
    pub fn ell_range(&self) -> (u64, u64) {
        let nf = self.n as f64;
        match self.range_mode {
            RangeMode::Thm11 => (self.n, 2 * self.n),
            RangeMode::Thm12_13 => (nf.sqrt().ceil() as u64, (nf * nf.ln()).floor() as u64),
        }
    }

    pub fn bound(&self) -> Bound {
        match self.range_mode {
            RangeMode::Thm11 => Bound::Thm11 {
                sigma: self.prog.sigma(),
                delta: self.delta,
            },
            RangeMode::Thm12_13 if self.prog.sigma() == 0.5 => Bound::Thm12 { c: self.c },
            RangeMode::Thm12_13 => Bound::Thm13,
        }
    }

    pub fn build_resonator(&self) -> Result<Resonator> {
        let nf = self.n as f64;
        match self.resonator {
            ResonatorChoice::Strip { x, ell } => build_strip_resonator(x, ell),
            ResonatorChoice::Sigma1 { x } => build_sigma1_resonator(x),
            ResonatorChoice::Critical { kappa, gamma, classes } => {
                build_critical_resonator(self.n, kappa, CriticalSeed { gamma, classes })
            }
            ResonatorChoice::Auto => match self.range_mode {
                RangeMode::Thm11 => {
                    let p = strip_params_from_n(nf, self.delta)?;
                    build_strip_resonator(p.x, p.ell)
                }
                RangeMode::Thm12_13 if self.prog.sigma() == 0.5 => {
                    build_critical_resonator(self.n, 0.4, CriticalSeed::default())
                }
                RangeMode::Thm12_13 => build_sigma1_resonator((nf.ln() / (6.0 * nf.ln().ln())).max(0.0)),
            },
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct HuntReport {
    pub config: HuntConfig,
    pub argmax_ell: u64,
    pub max_modulus: f64,
    pub bound: BoundValue,
    pub ratio: f64,
    pub candidates: u64,
    pub samples_evaluated: u64,
    /// |ζ| at argmax_ell recomputed with a ten times tighter target.
    pub recheck_modulus: f64,
    pub interrupted: bool,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub wall_time_secs: Option<f64>,
}

/// Phase-1 selection: indices into the candidate range, sorted ascending.
fn select(scores: &[f64], top_fraction: f64, random_fraction: f64, seed: u64) -> Vec<usize> {
    let len = scores.len();
    let top = ((len as f64 * top_fraction).ceil() as usize).clamp(1, len);
    let mut order: Vec<usize> = (0..len).collect();
    // ties broken by position so the selection is reproducible
    let by_score = |a: &usize, b: &usize| scores[*b].total_cmp(&scores[*a]).then(a.cmp(b));
    order.select_nth_unstable_by(top - 1, by_score);
    let (head, rest) = order.split_at(top);
    let mut kept = head.to_vec();
    let extra = ((len as f64 * random_fraction).ceil() as usize).min(rest.len());
    if extra > 0 {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        kept.extend(sample(&mut rng, rest.len(), extra).into_iter().map(|i| rest[i]));
    }
    kept.sort_unstable();
    kept
}

pub fn hunt(config: &HuntConfig) -> Result<HuntReport> {
    hunt_with_interrupt(config, &AtomicBool::new(false))
}

/// As `hunt`, returning the best sample so far once `stop` is raised.
pub fn hunt_with_interrupt(config: &HuntConfig, stop: &AtomicBool) -> Result<HuntReport> {
    let started = Instant::now();
    config.validate()?;
    let bound = theorem_bound(config.bound(), config.n as f64)?;
    let (lo, hi) = config.ell_range();
    let count = hi - lo + 1;
    if count as f64 > CANDIDATE_CAP {
        return Err(ZrError::Capacity {
            what: "hunt candidates",
            requested: count as f64,
            cap: CANDIDATE_CAP,
        });
    }
    let r = config.build_resonator()?;
    let prog = config.prog;
    let scores: Vec<f64> = (0..count as usize)
        .into_par_iter()
        .map(|i| r.eval(prog.t_at((lo + i as u64) as i64)).norm_sqr())
        .collect();
    let kept: Vec<u64> = select(&scores, config.top_fraction, config.random_fraction, config.seed)
        .into_iter()
        .map(|i| lo + i as u64)
        .collect();

    let evaluator = ZetaEvaluator::default();
    let mut best: Option<ZetaSample> = None;
    let mut evaluated = 0u64;
    let mut interrupted = false;
    for batch in kept.chunks(PHASE2_BATCH) {
        if stop.load(Ordering::Relaxed) {
            interrupted = true;
            break;
        }
        for s in evaluator.sample_at(&prog, batch, config.precision_target)? {
            evaluated += 1;
            if best.as_ref().is_none_or(|b| s.modulus > b.modulus) {
                best = Some(s);
            }
        }
    }
    let best = best.ok_or_else(|| ZrError::validation("hunt interrupted before any evaluation"))?;
    let recheck = evaluator
        .sample_one(&prog, best.ell, (config.precision_target / 10.0).max(MIN_PRECISION))?
        .modulus;
    Ok(HuntReport {
        config: config.clone(),
        argmax_ell: best.ell,
        max_modulus: best.modulus,
        ratio: best.modulus / bound.value,
        bound,
        candidates: count,
        samples_evaluated: evaluated,
        recheck_modulus: recheck,
        interrupted,
        wall_time_secs: Some(started.elapsed().as_secs_f64()),
    })
}

/// max |ζ| over every ℓ in the configured range.
pub fn exhaustive_max(config: &HuntConfig) -> Result<ZetaSample> {
    config.validate()?;
    let (lo, hi) = config.ell_range();
    let samples = ZetaEvaluator::default().sample_progression(&config.prog, lo, hi, config.precision_target)?;
    samples
        .into_iter()
        .max_by(|a, b| a.modulus.total_cmp(&b.modulus).then(b.ell.cmp(&a.ell)))
        .ok_or_else(|| ZrError::validation("empty range"))
}
