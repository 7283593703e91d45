//! Segmented sieve of Eratosthenes and the Möbius function.

use alloc::vec;
use alloc::vec::Vec;

#[allow(unused_imports)]
use num_traits::Float;

use crate::error::{precondition, Error, Result};

/// Default memory budget for [`sieve_primes`]: 512 MiB.
pub const DEFAULT_BUDGET_BYTES: usize = 512 << 20;

const SEGMENT: usize = 1 << 18;

/// All primes up to `limit`, ascending.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PrimeTable {
    limit: u64,
    primes: Vec<u64>,
}

impl PrimeTable {
    /// Wraps a list that is claimed to be the complete prime list up to
    /// `limit`. Ordering, range and a primality spot check are verified.
    pub fn from_parts(limit: u64, primes: Vec<u64>) -> Result<Self> {
        if limit < 2 {
            return Err(precondition("prime table limit must be at least 2"));
        }
        if primes.first() != Some(&2) {
            return Err(precondition("prime table must start at 2"));
        }
        if primes.windows(2).any(|w| w[0] >= w[1]) {
            return Err(precondition("prime table must be strictly increasing"));
        }
        if primes.last().is_some_and(|&p| p > limit) {
            return Err(precondition("prime table exceeds its limit"));
        }
        let step = (primes.len() / 64).max(1);
        if primes.iter().step_by(step).any(|&p| !is_prime(p)) {
            return Err(precondition("prime table contains a composite"));
        }
        let expected = prime_count_bounds(limit);
        let n = primes.len() as f64;
        if limit >= 17 && (n < expected.0 || n > expected.1) {
            return Err(precondition("prime table is incomplete"));
        }
        Ok(Self { limit, primes })
    }

    pub fn limit(&self) -> u64 {
        self.limit
    }

    pub fn primes(&self) -> &[u64] {
        &self.primes
    }

    pub fn len(&self) -> usize {
        self.primes.len()
    }

    pub fn is_empty(&self) -> bool {
        self.primes.is_empty()
    }

    /// The primes not exceeding `x`.
    pub fn up_to(&self, x: u64) -> &[u64] {
        let end = self.primes.partition_point(|&p| p <= x);
        &self.primes[..end]
    }
}

/// x/ln x ≤ π(x) ≤ 1.25506 x/ln x for x ≥ 17.
fn prime_count_bounds(x: u64) -> (f64, f64) {
    let xf = x as f64;
    let base = xf / xf.ln();
    (base, 1.255_06 * base)
}

fn estimated_bytes(limit: u64) -> usize {
    let sqrt = (limit as f64).sqrt() as usize + 1;
    let count = if limit < 17 { 8.0 } else { prime_count_bounds(limit).1 };
    (count as usize) * core::mem::size_of::<u64>() + SEGMENT + sqrt
}

pub fn sieve_primes(limit: u64) -> Result<PrimeTable> {
    sieve_primes_with_budget(limit, DEFAULT_BUDGET_BYTES)
}

pub fn sieve_primes_with_budget(limit: u64, budget_bytes: usize) -> Result<PrimeTable> {
    if limit < 2 {
        return Err(precondition("sieve limit must be at least 2"));
    }
    if estimated_bytes(limit) > budget_bytes {
        return Err(Error::Capacity { limit, budget_bytes });
    }
    let root = isqrt(limit);
    let base = simple_sieve(root);
    let mut primes: Vec<u64> = Vec::with_capacity(prime_count_bounds(limit.max(17)).1 as usize);
    primes.extend_from_slice(&base);
    let mut seg = vec![true; SEGMENT];
    let mut lo = root + 1;
    while lo <= limit {
        let hi = (lo + SEGMENT as u64 - 1).min(limit);
        let len = (hi - lo + 1) as usize;
        seg[..len].fill(true);
        for &p in &base {
            if p * p > hi {
                break;
            }
            let mut m = (lo.div_ceil(p) * p).max(p * p);
            while m <= hi {
                seg[(m - lo) as usize] = false;
                m += p;
            }
        }
        for (i, &flag) in seg[..len].iter().enumerate() {
            if flag {
                primes.push(lo + i as u64);
            }
        }
        lo = hi + 1;
    }
    Ok(PrimeTable { limit, primes })
}

fn simple_sieve(n: u64) -> Vec<u64> {
    let n = n as usize;
    if n < 2 {
        return Vec::new();
    }
    let mut flags = vec![true; n + 1];
    flags[0] = false;
    flags[1] = false;
    let mut i = 2;
    while i * i <= n {
        if flags[i] {
            let mut j = i * i;
            while j <= n {
                flags[j] = false;
                j += i;
            }
        }
        i += 1;
    }
    flags
        .iter()
        .enumerate()
        .filter_map(|(i, &f)| f.then_some(i as u64))
        .collect()
}

fn isqrt(n: u64) -> u64 {
    let mut r = (n as f64).sqrt() as u64;
    while r * r > n {
        r -= 1;
    }
    while (r + 1) * (r + 1) <= n {
        r += 1;
    }
    r
}

fn is_prime(n: u64) -> bool {
    if n < 2 {
        return false;
    }
    let mut d = 2;
    while d * d <= n {
        if n % d == 0 {
            return false;
        }
        d += 1;
    }
    true
}

/// μ(n) by trial division; μ(0) is treated as 0.
pub fn mobius(n: u64) -> i8 {
    if n == 0 {
        return 0;
    }
    let mut n = n;
    let mut sign = 1i8;
    let mut d = 2u64;
    while d * d <= n {
        if n % d == 0 {
            n /= d;
            if n % d == 0 {
                return 0;
            }
            sign = -sign;
        }
        d += 1;
    }
    if n > 1 {
        sign = -sign;
    }
    sign
}

/// μ(0..=n) by a linear sieve; entry 0 is 0.
pub fn mobius_table(n: usize) -> Vec<i8> {
    let mut mu = vec![0i8; n + 1];
    if n == 0 {
        return mu;
    }
    mu[1] = 1;
    let mut composite = vec![false; n + 1];
    let mut primes = Vec::new();
    for i in 2..=n {
        if !composite[i] {
            primes.push(i);
            mu[i] = -1;
        }
        for &p in &primes {
            let k = i * p;
            if k > n {
                break;
            }
            composite[k] = true;
            if i % p == 0 {
                mu[k] = 0;
                break;
            }
            mu[k] = -mu[i];
        }
    }
    mu
}
