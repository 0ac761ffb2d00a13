//! Integer helpers shared by the exact tail sums.

use std::collections::VecDeque;

use num_bigint::{BigInt, BigUint};
use num_traits::{One, ToPrimitive, Zero};

/// Binomial coefficient `C(n, k)`; zero when `k > n`.
pub fn binom_coeff(n: u64, k: u64) -> BigUint {
    if k > n {
        return BigUint::zero();
    }
    let k = k.min(n - k);
    let mut acc = BigUint::one();
    for i in 0..k {
        acc *= n - i;
        acc /= i + 1;
    }
    acc
}

/// Row `C(n, 0), ..., C(n, kmax)` built by the multiplicative recurrence.
pub(crate) fn binom_row(n: u64, kmax: u64) -> Vec<BigInt> {
    let top = kmax.min(n);
    let mut row = Vec::with_capacity(top as usize + 1);
    let mut c = BigInt::one();
    row.push(c.clone());
    for k in 0..top {
        c *= n - k;
        c /= k + 1;
        row.push(c.clone());
    }
    row
}

/// Primes `<= limit` by the sieve of Eratosthenes.
pub fn primes_up_to(limit: u64) -> Vec<u64> {
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

/// Distinct prime factors of `n` by trial division.
pub fn prime_factors(mut n: u64) -> Vec<u64> {
    let mut out = Vec::new();
    let mut d = 2u64;
    while d.saturating_mul(d) <= n {
        if n % d == 0 {
            out.push(d);
            while n % d == 0 {
                n /= d;
            }
        }
        d += if d == 2 { 1 } else { 2 };
    }
    if n > 1 {
        out.push(n);
    }
    out
}

/// Prime factors of a big integer when it fits in 64 bits and factors by
/// trial division below 2^20; `None` otherwise, so callers fall back to gcd.
pub(crate) fn small_prime_factors(n: &BigInt) -> Option<Vec<u64>> {
    let v = n.to_u64()?;
    if v > 1 << 40 {
        let mut rest = v;
        let mut out = Vec::new();
        let mut d = 2u64;
        while d < (1 << 20) && d * d <= rest {
            if rest % d == 0 {
                out.push(d);
                while rest % d == 0 {
                    rest /= d;
                }
            }
            d += if d == 2 { 1 } else { 2 };
        }
        if rest > 1 {
            if rest > 1 << 40 && d * d <= rest {
                return None;
            }
            out.push(rest);
        }
        return Some(out);
    }
    Some(prime_factors(v))
}

/// Union of two sorted prime lists.
pub(crate) fn merge_primes(a: &[u64], b: &[u64]) -> Vec<u64> {
    let mut out: Vec<u64> = a.iter().chain(b).copied().collect();
    out.sort_unstable();
    out.dedup();
    out
}

/// `sum_{j=0}^{top} coeffs[j] * x^j * y^(top-j)` by Horner's rule on the
/// homogeneous form; every step is a big-by-small multiplication.
pub(crate) fn homogeneous_sum(coeffs: &[BigInt], x: &BigInt, y: &BigInt) -> BigInt {
    let Some((last, rest)) = coeffs.split_last() else {
        return BigInt::zero();
    };
    let mut acc = last.clone();
    let mut y_pow = BigInt::one();
    for c in rest.iter().rev() {
        y_pow *= y;
        acc = acc * x + c * &y_pow;
    }
    acc
}

/// Sliding window over the self-powers `m^m` for consecutive `m`.
///
/// Exact sweeps over `n` need `(n+1)^n` and `(n+1-r)^(n+1-r)` for a handful
/// of small `r`; keeping the last `width` self-powers turns that into one
/// big exponentiation per step.
#[derive(Debug, Clone)]
pub struct SelfPowers {
    first: u64,
    window: VecDeque<BigUint>,
    width: usize,
}

impl SelfPowers {
    /// Window holding `m^m` for `m` in `[start, start + width)`.
    pub fn new(start: u64, width: usize) -> Self {
        let width = width.max(1);
        let window = (start..start + width as u64).map(self_power).collect();
        Self { first: start, window, width }
    }

    /// Smallest `m` currently held.
    pub fn first(&self) -> u64 {
        self.first
    }

    /// Largest `m` currently held.
    pub fn last(&self) -> u64 {
        self.first + self.width as u64 - 1
    }

    /// `m^m`; panics when `m` is outside the window.
    pub fn get(&self, m: u64) -> &BigUint {
        assert!(
            m >= self.first && m <= self.last(),
            "self-power {m} outside window [{}, {}]",
            self.first,
            self.last()
        );
        &self.window[(m - self.first) as usize]
    }

    /// Slides the window one step up.
    pub fn advance(&mut self) {
        let next = self.last() + 1;
        self.window.pop_front();
        self.window.push_back(self_power(next));
        self.first += 1;
    }
}

/// `m^m`, with `0^0 = 1`.
pub fn self_power(m: u64) -> BigUint {
    let exp = u32::try_from(m).expect("self-power exponent out of range");
    BigUint::from(m).pow(exp)
}
