//! Closed-form large-value bounds with their asymptotic slack removed.

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZrError};

pub const EULER_GAMMA: f64 = 0.577_215_664_901_532_9;

/// Largest admissible constant in the critical-line bound, 1/√2.
pub const C_MAX: f64 = std::f64::consts::FRAC_1_SQRT_2;

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(tag = "which", rename_all = "snake_case")]
pub enum Bound {
    /// exp(((1/2 − δ) log N)^{1−σ} / ((1−σ)(log log N)^σ)) on N ≤ ℓ ≤ 2N.
    Thm11 { sigma: f64, delta: f64 },
    /// exp(c √(log N log₃N / log₂N)) on √N ≤ ℓ ≤ N log N, σ = 1/2.
    Thm12 { c: f64 },
    /// e^γ (log₂N + log₃N) on √N ≤ ℓ ≤ N log N, σ = 1.
    Thm13,
    /// exp(C_σ (log T)^{1−σ} / (log log T)^σ) with C_σ = (σ − 1/2)^{1/2}/20.
    Montgomery { sigma: f64 },
    /// Montgomery's shape with C_σ = 0.18 (2σ − 1)^{1−σ}.
    Aistleitner { sigma: f64 },
    /// e^γ (log₂T + log₃T − log₄T).
    GranvilleSoundararajan,
    /// exp(√(log ℓ / (6 log log ℓ))).
    LiRadziwill,
    /// exp(c √(log T log₃T / log₂T)) on [T^θ, T], c < √(1 − θ).
    BondarenkoSeip { theta: f64, c: f64 },
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct BoundValue {
    pub bound: Bound,
    pub at: f64,
    pub value: f64,
    /// The asymptotic term left out of `value`.
    pub dropped_term: String,
}

/// j-fold iterated natural logarithm; undefined once an iterate is ≤ 0.
pub fn iterated_log(x: f64, j: u32) -> Result<f64> {
    let mut v = x;
    for _ in 0..j {
        if !(v > 0.0) {
            return Err(ZrError::range(format!("log_{j} undefined at {x}")));
        }
        v = v.ln();
    }
    Ok(v)
}

fn positive_log(x: f64, j: u32) -> Result<f64> {
    let v = iterated_log(x, j)?;
    if v > 0.0 {
        Ok(v)
    } else {
        Err(ZrError::range(format!("log_{j}({x}) = {v} is not positive")))
    }
}

fn strip_sigma(sigma: f64) -> Result<()> {
    if sigma > 0.5 && sigma < 1.0 {
        Ok(())
    } else {
        Err(ZrError::range(format!("sigma = {sigma} outside (1/2, 1)")))
    }
}

pub fn montgomery_constant(sigma: f64) -> Result<f64> {
    strip_sigma(sigma)?;
    Ok((sigma - 0.5).sqrt() / 20.0)
}

pub fn aistleitner_constant(sigma: f64) -> Result<f64> {
    strip_sigma(sigma)?;
    Ok(0.18 * (2.0 * sigma - 1.0).powf(1.0 - sigma))
}

fn critical_shape(c: f64, x: f64) -> Result<f64> {
    let l1 = positive_log(x, 1)?;
    let l2 = positive_log(x, 2)?;
    let l3 = positive_log(x, 3)?;
    Ok((c * (l1 * l3 / l2).sqrt()).exp())
}

/// Value of `bound` at N (or T, or ℓ), which must be at least 16.
pub fn theorem_bound(bound: Bound, at: f64) -> Result<BoundValue> {
    if !(at >= 16.0) || !at.is_finite() {
        return Err(ZrError::range(format!("bounds need N >= 16, got {at}")));
    }
    let (value, dropped) = match bound {
        Bound::Thm11 { sigma, delta } => {
            strip_sigma(sigma)?;
            if !(delta > 0.0 && delta < 0.5) {
                return Err(ZrError::range(format!("delta = {delta} outside (0, 1/2)")));
            }
            let l1 = positive_log(at, 1)?;
            let l2 = positive_log(at, 2)?;
            let v = (((0.5 - delta) * l1).powf(1.0 - sigma) / ((1.0 - sigma) * l2.powf(sigma))).exp();
            (v, "(1+o(1)) factor in the exponent")
        }
        Bound::Thm12 { c } => {
            if !(c > 0.0 && c < C_MAX) {
                return Err(ZrError::range(format!("c = {c} must lie in (0, 1/sqrt 2)")));
            }
            (critical_shape(c, at)?, "none; holds for N beyond an unspecified threshold")
        }
        Bound::Thm13 => {
            let v = EULER_GAMMA.exp() * (positive_log(at, 2)? + positive_log(at, 3)?);
            (v, "O(1) inside the bracket")
        }
        Bound::Montgomery { sigma } | Bound::Aistleitner { sigma } => {
            let cs = match bound {
                Bound::Montgomery { .. } => montgomery_constant(sigma)?,
                _ => aistleitner_constant(sigma)?,
            };
            let l1 = positive_log(at, 1)?;
            let l2 = positive_log(at, 2)?;
            ((cs * l1.powf(1.0 - sigma) / l2.powf(sigma)).exp(), "none; C_sigma is an admissible constant")
        }
        Bound::GranvilleSoundararajan => {
            let v = EULER_GAMMA.exp() * (positive_log(at, 2)? + positive_log(at, 3)? - iterated_log(at, 4)?);
            (v, "O(1) inside the bracket")
        }
        Bound::LiRadziwill => {
            let l1 = positive_log(at, 1)?;
            let l2 = positive_log(at, 2)?;
            ((l1 / (6.0 * l2)).sqrt().exp(), "(1+o(1)) factor in the exponent and the implied constant")
        }
        Bound::BondarenkoSeip { theta, c } => {
            if !(0.0..1.0).contains(&theta) {
                return Err(ZrError::range(format!("theta = {theta} outside [0, 1)")));
            }
            if !(c > 0.0 && c < (1.0 - theta).sqrt()) {
                return Err(ZrError::range(format!("c = {c} must lie in (0, sqrt(1 - theta))")));
            }
            (critical_shape(c, at)?, "none; holds for T beyond an unspecified threshold")
        }
    };
    Ok(BoundValue {
        bound,
        at,
        value,
        dropped_term: dropped.to_string(),
    })
}
