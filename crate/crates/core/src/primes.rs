//! Prime enumeration.
//!
//! A segmented sieve of Eratosthenes feeding a process-wide, grow-only cache.
//! Callers receive a cheap handle onto the cached table.

use std::ops::Deref;
use std::sync::{Arc, OnceLock, RwLock};

const SEGMENT: u64 = 1 << 16;

#[derive(Debug)]
struct Cache {
    limit: u64,
    primes: Arc<Vec<u64>>,
}

fn cache() -> &'static RwLock<Cache> {
    static CACHE: OnceLock<RwLock<Cache>> = OnceLock::new();
    CACHE.get_or_init(|| {
        RwLock::new(Cache {
            limit: 1,
            primes: Arc::new(Vec::new()),
        })
    })
}

/// The primes `<= limit`, borrowed from the shared cache.
#[derive(Debug, Clone)]
pub struct Primes {
    table: Arc<Vec<u64>>,
    len: usize,
}

impl Deref for Primes {
    type Target = [u64];

    fn deref(&self) -> &[u64] {
        &self.table[..self.len]
    }
}

/// All primes `p <= limit`.
pub fn primes_up_to(limit: u64) -> Primes {
    {
        let guard = cache().read().expect("prime cache poisoned");
        if guard.limit >= limit {
            let len = guard.primes.partition_point(|&p| p <= limit);
            return Primes {
                table: Arc::clone(&guard.primes),
                len,
            };
        }
    }
    let mut guard = cache().write().expect("prime cache poisoned");
    if guard.limit < limit {
        // grow geometrically so repeated small extensions stay cheap
        let target = limit.max(guard.limit.saturating_mul(2)).max(1 << 12);
        guard.primes = Arc::new(segmented_sieve(target));
        guard.limit = target;
    }
    let len = guard.primes.partition_point(|&p| p <= limit);
    Primes {
        table: Arc::clone(&guard.primes),
        len,
    }
}

/// Primes `<= x` for a real bound (`x < 2` gives the empty set).
pub fn primes_le(x: f64) -> Primes {
    if !(x >= 2.0) {
        return primes_up_to(1);
    }
    primes_up_to(x.floor() as u64)
}

/// Prime counting function.
pub fn prime_pi(x: f64) -> usize {
    primes_le(x).len()
}

fn simple_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let n = limit as usize;
    let mut composite = vec![false; n + 1];
    let mut out = Vec::new();
    for i in 2..=n {
        if composite[i] {
            continue;
        }
        out.push(i as u64);
        let mut j = i * i;
        while j <= n {
            composite[j] = true;
            j += i;
        }
    }
    out
}

/// Segmented sieve over `[2, limit]`.
pub fn segmented_sieve(limit: u64) -> Vec<u64> {
    if limit < 2 {
        return Vec::new();
    }
    let root = (limit as f64).sqrt() as u64 + 1;
    let base = simple_sieve(root);
    let mut out: Vec<u64> = base.iter().copied().filter(|&p| p <= limit).collect();
    let mut lo = root + 1;
    let mut mark = vec![false; SEGMENT as usize];
    while lo <= limit {
        let hi = (lo + SEGMENT - 1).min(limit);
        let width = (hi - lo + 1) as usize;
        mark[..width].iter_mut().for_each(|m| *m = false);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut start = lo.div_ceil(p) * p;
            if start < p * p {
                start = p * p;
            }
            let mut j = start;
            while j <= hi {
                mark[(j - lo) as usize] = true;
                j += p;
            }
        }
        out.extend((0..width).filter(|&i| !mark[i]).map(|i| lo + i as u64));
        lo = hi + 1;
    }
    out
}

/// Factor `n` by trial division against the cached prime table.
pub fn factor(mut n: u64) -> Vec<(u64, u32)> {
    let mut out = Vec::new();
    if n < 2 {
        return out;
    }
    let root = (n as f64).sqrt() as u64 + 1;
    for &p in primes_up_to(root).iter() {
        if p * p > n {
            break;
        }
        if n.is_multiple_of(p) {
            let mut e = 0;
            while n.is_multiple_of(p) {
                n /= p;
                e += 1;
            }
            out.push((p, e));
        }
    }
    if n > 1 {
        out.push((n, 1));
    }
    out
}

/// Largest prime factor of `n` (1 for `n = 1`).
pub fn largest_prime_factor(n: u64) -> u64 {
    factor(n).last().map_or(1, |&(p, _)| p)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn segmented_matches_simple() {
        for limit in [0, 1, 2, 3, 10, 100, 65_536, 65_537, 200_000] {
            assert_eq!(segmented_sieve(limit), simple_sieve(limit), "limit {limit}");
        }
    }

    #[test]
    fn counts() {
        assert_eq!(prime_pi(10.0), 4);
        assert_eq!(prime_pi(1.9), 0);
        assert_eq!(prime_pi(1e4), 1229);
        assert_eq!(prime_pi(1e6), 78_498);
        assert_eq!(&*primes_le(16.93), &[2, 3, 5, 7, 11, 13]);
    }

    #[test]
    fn factoring() {
        assert_eq!(factor(1), vec![]);
        assert_eq!(factor(360), vec![(2, 3), (3, 2), (5, 1)]);
        assert_eq!(factor(1_000_003), vec![(1_000_003, 1)]);
        assert_eq!(largest_prime_factor(30), 5);
        assert_eq!(largest_prime_factor(1), 1);
    }
}
