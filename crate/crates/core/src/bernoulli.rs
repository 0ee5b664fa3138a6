//! Exact Bernoulli numbers.
//!
//! Convention: `B_1 = -1/2`. Only even indices enter the closed forms, so the
//! choice of sign for `B_1` does not affect any sum.

use std::sync::{OnceLock, RwLock};

use num_bigint::BigInt;
use num_rational::BigRational;
use num_traits::{One, Signed, Zero};

use crate::error::{Error, Result};

/// Arbitrary-precision rational, always in lowest terms with a positive
/// denominator.
pub type Rational = BigRational;

pub const DEFAULT_LIMIT: usize = 256;

/// `p/q` with the sign on the numerator and no spaces; integers print as `p/1`.
pub fn format_rational(q: &Rational) -> String {
    format!("{}/{}", q.numer(), q.denom())
}

pub(crate) fn rational(n: i64, d: i64) -> Rational {
    Rational::new(BigInt::from(n), BigInt::from(d))
}

pub(crate) fn pow2(e: u32) -> BigInt {
    BigInt::one() << e
}

pub(crate) fn factorial(n: u32) -> BigInt {
    (1..=n).fold(BigInt::one(), |acc, k| acc * BigInt::from(k))
}

/// Memoized table of `B_r`, extended on demand up to a fixed limit.
#[derive(Debug)]
pub struct BernoulliCache {
    limit: usize,
    values: RwLock<Vec<Rational>>,
}

impl BernoulliCache {
    pub fn with_limit(limit: usize) -> Self {
        BernoulliCache {
            limit,
            values: RwLock::new(vec![Rational::one()]),
        }
    }

    pub fn limit(&self) -> usize {
        self.limit
    }

    pub fn get(&self, r: usize) -> Result<Rational> {
        if r > self.limit {
            return Err(Error::Capacity {
                requested: r,
                limit: self.limit,
            });
        }
        {
            let values = self.values.read().expect("bernoulli cache poisoned");
            if let Some(b) = values.get(r) {
                return Ok(b.clone());
            }
        }
        let mut values = self.values.write().expect("bernoulli cache poisoned");
        while values.len() <= r {
            let m = values.len();
            let next = next_bernoulli(&values, m);
            values.push(next);
        }
        Ok(values[r].clone())
    }
}

// sum_{k=0}^{m} binom(m+1, k) B_k = 0
fn next_bernoulli(prev: &[Rational], m: usize) -> Rational {
    if m >= 3 && m % 2 == 1 {
        return Rational::zero();
    }
    let mut binom = BigInt::one();
    let mut acc = Rational::zero();
    for (k, b) in prev.iter().enumerate().take(m) {
        if !b.is_zero() {
            acc += Rational::from_integer(binom.clone()) * b;
        }
        // binom(m+1, k+1) from binom(m+1, k)
        binom = binom * BigInt::from(m + 1 - k) / BigInt::from(k + 1);
    }
    -acc / Rational::from_integer(BigInt::from(m + 1))
}

fn default_cache() -> &'static BernoulliCache {
    static CACHE: OnceLock<BernoulliCache> = OnceLock::new();
    CACHE.get_or_init(|| BernoulliCache::with_limit(DEFAULT_LIMIT))
}

/// Exact `B_r` from the shared cache (limit [`DEFAULT_LIMIT`]).
pub fn bernoulli(r: usize) -> Result<Rational> {
    default_cache().get(r)
}

/// `(2^(2n+1) - 1) |B_(2n+2)| / (2n+2)!`, the positive constant that closes
/// each integration step from the order-`n` sine sum to the order-`n+1`
/// cosine sum. Equals `-c_0(n+1)`.
pub fn abs_bernoulli_term(n: u32) -> Result<Rational> {
    let b = bernoulli(2 * n as usize + 2)?.abs();
    let num = pow2(2 * n + 1) - BigInt::one();
    Ok(b * Rational::new(num, factorial(2 * n + 2)))
}
