use std::cmp::Ordering;

use serde::{Deserialize, Serialize};

use crate::error::{Result, ZrError};
use crate::primes;
use crate::sum::Neumaier;

/// A positive integer held as its prime factorisation.
///
/// Support elements of long resonators overflow any machine integer, so all
/// arithmetic that matters (divisibility, quotients, n^{it}) runs on exponent
/// vectors and the cached logarithm.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(try_from = "Vec<(u64, u32)>", into = "Vec<(u64, u32)>")]
pub struct FactoredInteger {
    factors: Vec<(u64, u32)>,
    log_value: f64,
}

impl Eq for FactoredInteger {}

impl FactoredInteger {
    pub fn one() -> Self {
        Self {
            factors: Vec::new(),
            log_value: 0.0,
        }
    }

    /// Build from `(prime, exponent)` pairs. Primes must be strictly
    /// increasing and exponents positive.
    pub fn from_factors(factors: Vec<(u64, u32)>) -> Result<Self> {
        for w in factors.windows(2) {
            if w[0].0 >= w[1].0 {
                return Err(ZrError::validation("primes must be strictly increasing"));
            }
        }
        if factors.iter().any(|&(p, e)| e == 0 || p < 2) {
            return Err(ZrError::validation("exponents must be positive"));
        }
        if factors
            .iter()
            .any(|&(p, _)| primes::factor(p).as_slice() != [(p, 1)])
        {
            return Err(ZrError::validation("factor base contains a composite"));
        }
        Ok(Self::from_factors_unchecked(factors))
    }

    pub(crate) fn from_factors_unchecked(factors: Vec<(u64, u32)>) -> Self {
        let log_value = factors
            .iter()
            .map(|&(p, e)| e as f64 * (p as f64).ln())
            .collect::<Neumaier>()
            .value();
        Self { factors, log_value }
    }

    pub fn from_u64(n: u64) -> Result<Self> {
        if n == 0 {
            return Err(ZrError::validation("zero has no factorisation"));
        }
        Ok(Self::from_factors_unchecked(primes::factor(n)))
    }

    pub fn factors(&self) -> &[(u64, u32)] {
        &self.factors
    }

    pub fn log_value(&self) -> f64 {
        self.log_value
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    /// The value if it fits in a `u64`.
    pub fn to_u64(&self) -> Option<u64> {
        self.factors.iter().try_fold(1u64, |acc, &(p, e)| {
            (0..e).try_fold(acc, |a, _| a.checked_mul(p))
        })
    }

    pub fn exponent_of(&self, p: u64) -> u32 {
        self.factors
            .binary_search_by_key(&p, |&(q, _)| q)
            .map_or(0, |i| self.factors[i].1)
    }

    /// Exponent-vector dominance: `self | other`.
    pub fn divides(&self, other: &FactoredInteger) -> bool {
        self.factors.iter().all(|&(p, e)| other.exponent_of(p) >= e)
    }

    /// `self / d`, provided `d | self`.
    pub fn quotient(&self, d: &FactoredInteger) -> Option<FactoredInteger> {
        if !d.divides(self) {
            return None;
        }
        let factors = self
            .factors
            .iter()
            .filter_map(|&(p, e)| {
                let r = e - d.exponent_of(p);
                (r > 0).then_some((p, r))
            })
            .collect();
        Some(Self::from_factors_unchecked(factors))
    }

    pub fn mul(&self, other: &FactoredInteger) -> FactoredInteger {
        let mut out = Vec::with_capacity(self.factors.len() + other.factors.len());
        let (mut i, mut j) = (0, 0);
        let (a, b) = (&self.factors, &other.factors);
        while i < a.len() || j < b.len() {
            match (a.get(i), b.get(j)) {
                (Some(&(p, e)), Some(&(q, f))) if p == q => {
                    out.push((p, e + f));
                    i += 1;
                    j += 1;
                }
                (Some(&(p, e)), Some(&(q, _))) if p < q => {
                    out.push((p, e));
                    i += 1;
                }
                (Some(_), Some(&(q, f))) => {
                    out.push((q, f));
                    j += 1;
                }
                (Some(&pe), None) => {
                    out.push(pe);
                    i += 1;
                }
                (None, Some(&qf)) => {
                    out.push(qf);
                    j += 1;
                }
                (None, None) => unreachable!(),
            }
        }
        Self::from_factors_unchecked(out)
    }

    /// Number of divisors.
    pub fn divisor_count(&self) -> f64 {
        self.factors.iter().map(|&(_, e)| (e + 1) as f64).product()
    }

    /// All divisors, in no particular order.
    pub fn divisors(&self) -> Vec<FactoredInteger> {
        let mut out = vec![Vec::<(u64, u32)>::new()];
        for &(p, e) in &self.factors {
            let mut next = Vec::with_capacity(out.len() * (e as usize + 1));
            for base in &out {
                next.push(base.clone());
                for k in 1..=e {
                    let mut v = base.clone();
                    v.push((p, k));
                    next.push(v);
                }
            }
            out = next;
        }
        out.into_iter().map(Self::from_factors_unchecked).collect()
    }

    /// Support ordering: by log value, ties broken on the exponent vector.
    pub fn support_cmp(&self, other: &Self) -> Ordering {
        self.log_value
            .total_cmp(&other.log_value)
            .then_with(|| self.factors.cmp(&other.factors))
    }
}

impl TryFrom<Vec<(u64, u32)>> for FactoredInteger {
    type Error = ZrError;

    fn try_from(v: Vec<(u64, u32)>) -> Result<Self> {
        Self::from_factors(v)
    }
}

impl From<FactoredInteger> for Vec<(u64, u32)> {
    fn from(f: FactoredInteger) -> Self {
        f.factors
    }
}
