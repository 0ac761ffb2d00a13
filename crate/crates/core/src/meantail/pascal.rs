//! Pascal mean-tail `f_r(p)`, its per-piece infima `a_r(n)`, and the
//! closed forms for `r = 2, 3`.

use std::cmp::Ordering;

use num_bigint::{BigInt, BigUint};
use num_traits::Zero;

use crate::distributions::{binomial_tail_geq, pascal_cdf_leq, pascal_coefficients, BinomialParams, PascalParams};
use crate::error::{domain, Result};
use crate::numerics::integer::{binom_row, homogeneous_sum, prime_factors, SelfPowers};
use crate::numerics::Rational;
use crate::par::map_ordered;

fn exponent(n: u64) -> Result<u32> {
    u32::try_from(n).map_err(|_| domain(format!("exponent {n} too large")))
}

/// `f_r(p) = P(B*(r, p) <= r/p) = P(B*(r, p) <= floor(r/p))`.
pub fn pascal_f(r: u64, p: &Rational) -> Result<Rational> {
    let params = PascalParams::new(r, p.clone())?;
    let mean = params.mean();
    let floor = i64::try_from(mean.floor()).map_err(|_| domain(format!("r/p too large for p = {p}")))?;
    Ok(pascal_cdf_leq(&params, floor))
}

/// `a_r(n) = sum_{k=r}^n C(k-1, r-1) (r/(n+1))^r (1 - r/(n+1))^(k-r)`,
/// summed term by term over the common denominator `(n+1)^n`.
pub fn pascal_a(r: u64, n: u64) -> Result<Rational> {
    check_piece(r, n)?;
    let y = BigInt::from(n + 1);
    let x = BigInt::from(n + 1 - r);
    let coeffs = pascal_coefficients(r, n - r);
    let num = homogeneous_sum(&coeffs, &x, &y) * BigInt::from(r).pow(exponent(r)?);
    let den = y.pow(exponent(n)?);
    Ok(Rational::from_smooth_fraction(num, den, &prime_factors(n + 1)))
}

/// `a_r(n)` as the binomial tail `P(B(n, r/(n+1)) >= r)`.
pub fn pascal_a_via_binomial(r: u64, n: u64) -> Result<Rational> {
    check_piece(r, n)?;
    let params = BinomialParams::new(n, Rational::new(r, n + 1))?;
    Ok(binomial_tail_geq(&params, r as i64))
}

/// `(r/(r+1))^r`, the claimed global infimum of `f_r`.
pub fn pascal_claimed_infimum(r: u64) -> Result<Rational> {
    if r == 0 {
        return Err(domain("Pascal r must be >= 1"));
    }
    Ok(Rational::new(r, r + 1).pow(r as i64))
}

fn check_piece(r: u64, n: u64) -> Result<()> {
    if r == 0 {
        return Err(domain("Pascal r must be >= 1"));
    }
    if n < r {
        return Err(domain(format!("piece index n = {n} must be >= r = {r}")));
    }
    Ok(())
}

/// `b_2(n) = (3n-1)/(n+1) ((n-1)/(n+1))^(n-1)` for `n >= 3`.
pub fn b2(n: u64) -> Result<Rational> {
    if n < 3 {
        return Err(domain(format!("b2 is defined for n >= 3, got {n}")));
    }
    let num = BigInt::from(3 * n - 1) * BigInt::from(n - 1).pow(exponent(n - 1)?);
    let den = BigInt::from(n + 1).pow(exponent(n)?);
    Ok(Rational::from_smooth_fraction(num, den, &prime_factors(n + 1)))
}

/// `b_3(n) = (17n^2 - 29n + 8) / (2(n+1)^2) ((n-2)/(n+1))^(n-2)` for `n >= 4`.
pub fn b3(n: u64) -> Result<Rational> {
    if n < 4 {
        return Err(domain(format!("b3 is defined for n >= 4, got {n}")));
    }
    let quad = BigInt::from(17u64) * n * n - BigInt::from(29u64) * n + 8u32;
    let num = quad * BigInt::from(n - 2).pow(exponent(n - 2)?);
    let den = BigInt::from(n + 1).pow(exponent(n)?) * 2u32;
    Ok(Rational::from_smooth_fraction(num, den, &prime_factors(2 * (n + 1))))
}

/// Closed form of `a_2(n)`: `4/9` at `n = 2`, `1 - b_2(n)` for `n >= 3`.
pub fn a2_closed(n: u64) -> Result<Rational> {
    match n {
        0 | 1 => Err(domain(format!("a2 is defined for n >= 2, got {n}"))),
        2 => Ok(Rational::new(4, 9)),
        _ => Ok(&Rational::one() - &b2(n)?),
    }
}

/// Closed form of `a_3(n)`: `27/64` at `n = 3`, `1 - b_3(n)` for `n >= 4`.
pub fn a3_closed(n: u64) -> Result<Rational> {
    match n {
        0..=2 => Err(domain(format!("a3 is defined for n >= 3, got {n}"))),
        3 => Ok(Rational::new(27, 64)),
        _ => Ok(&Rational::one() - &b3(n)?),
    }
}

/// Per-piece monotone term `g_k(p) = C(k-1, r-1) p^r (1-p)^(k-r)`.
pub fn pascal_g(r: u64, k: u64, p: &Rational) -> Result<Rational> {
    let params = PascalParams::new(r, p.clone())?;
    Ok(crate::distributions::pascal_pmf(&params, k as i64))
}

/// Outcome of comparing every `a_r(n)`, `r < n <= n_max`, against `a_r(r)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MinimumSweep {
    pub r: u64,
    pub n_max: u64,
    /// Number of `n` compared.
    pub checked: u64,
    /// First `n` with `a_r(n) <= a_r(r)`, if any.
    pub first_violation: Option<u64>,
}

/// Sign of `a_r(n) - a_r(r)` by exact integer arithmetic.
///
/// With `m = n + 1 - r`, `1 - a_r(n) = m^m T / (n+1)^n` where
/// `T = sum_{k<r} C(n,k) r^k m^(r-1-k)`, and `a_r(r) = r^r/(r+1)^r`, so the
/// sign is that of `((r+1)^r - r^r) (n+1)^n - (r+1)^r m^m T`. Both big
/// powers come from `powers`, which must hold `m^m` and `(n+1)^(n+1)`.
pub fn excess_over_first_piece(r: u64, n: u64, powers: &SelfPowers) -> Ordering {
    debug_assert!(n >= r && r >= 1);
    let m = n + 1 - r;
    let b = BigUint::from(r + 1).pow(r as u32);
    let a = BigUint::from(r).pow(r as u32);
    let t = homogeneous_sum(&binom_row(n, r - 1), &BigInt::from(r), &BigInt::from(m));
    let t = t.to_biguint().expect("positive sum");
    let np1_pow_n = powers.get(n + 1) / (n + 1);
    let lhs = (&b - &a) * np1_pow_n;
    let rhs = b * powers.get(m) * t;
    lhs.cmp(&rhs)
}

const SWEEP_CHUNK: u64 = 400;

/// Checks `a_r(n) > a_r(r)` for every `r` in `rs` and `r < n <= n_max`.
///
/// One pass over `n` serves all `r`: a window of self-powers `m^m` spanning
/// `[n + 1 - max r, n + 1]` supplies every big power, so each step costs a
/// single exponentiation. Chunks of `n` run in parallel.
pub fn sweep_pascal_minimum(rs: &[u64], n_max: u64) -> Vec<MinimumSweep> {
    let r_max = rs.iter().copied().max().unwrap_or(1).max(1);
    let n_lo = rs.iter().copied().min().unwrap_or(1).max(1) + 1;
    let mut chunks = Vec::new();
    let mut start = n_lo;
    while start <= n_max {
        let end = (start + SWEEP_CHUNK - 1).min(n_max);
        chunks.push((start, end));
        start = end + 1;
    }
    let results: Vec<Vec<(u64, u64, Option<u64>)>> = map_ordered(chunks, |(lo, hi)| {
        let first = (lo + 1).saturating_sub(r_max);
        let mut powers = SelfPowers::new(first, r_max as usize + 1);
        let mut per_r: Vec<(u64, u64, Option<u64>)> = rs.iter().map(|&r| (r, 0, None)).collect();
        for n in lo..=hi {
            while powers.last() < n + 1 {
                powers.advance();
            }
            for cell in per_r.iter_mut() {
                let r = cell.0;
                if n <= r {
                    continue;
                }
                cell.1 += 1;
                if cell.2.is_none() && excess_over_first_piece(r, n, &powers) != Ordering::Greater {
                    cell.2 = Some(n);
                }
            }
        }
        per_r
    });
    rs.iter()
        .enumerate()
        .map(|(i, &r)| {
            let mut checked = 0;
            let mut first_violation = None;
            for chunk in &results {
                checked += chunk[i].1;
                if first_violation.is_none() {
                    first_violation = chunk[i].2;
                }
            }
            MinimumSweep { r, n_max, checked, first_violation }
        })
        .collect()
}

/// First `n` in `[1, n_max)` where `a_n < a_{n+1}` fails, comparing
/// `n^n (n+2)^(n+2) (n+1)` against `((n+1)^(n+1))^2 (n+2)` exactly.
pub fn geometric_a_increasing_violation(n_max: u64) -> Option<u64> {
    let mut chunks = Vec::new();
    let mut start = 1;
    while start < n_max {
        let end = (start + SWEEP_CHUNK - 1).min(n_max - 1);
        chunks.push((start, end));
        start = end + 1;
    }
    map_ordered(chunks, |(lo, hi)| {
        let mut powers = SelfPowers::new(lo, 3);
        for n in lo..=hi {
            let lhs = powers.get(n) * powers.get(n + 2) * (n + 1);
            let s1 = powers.get(n + 1);
            let rhs = s1 * s1 * (n + 2);
            if lhs <= rhs {
                return Some(n);
            }
            if n < hi {
                powers.advance();
            }
        }
        None
    })
    .into_iter()
    .flatten()
    .next()
}

/// `1 - a_r(n)` numerator over `(n+1)^n`, for spot checks of the sweep
/// identity against [`pascal_a`].
pub fn complement_numerator(r: u64, n: u64) -> BigUint {
    let m = n + 1 - r;
    let t = homogeneous_sum(&binom_row(n, r - 1), &BigInt::from(r), &BigInt::from(m));
    let mm = crate::numerics::integer::self_power(m);
    if t.is_zero() {
        return BigUint::zero();
    }
    mm * t.to_biguint().expect("positive")
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::distributions::pascal_pmf;
    use crate::numerics::ratio;

    #[test]
    fn f_examples() {
        assert_eq!(pascal_f(2, &ratio(2, 3)).unwrap(), ratio(20, 27));
        assert_eq!(pascal_f(2, &ratio(3, 4)).unwrap(), ratio(9, 16));
        assert!(pascal_f(2, &ratio(0, 1)).is_err());
        for p in [ratio(1, 1), ratio(1, 2), ratio(2, 5), ratio(7, 30)] {
            assert_eq!(pascal_f(1, &p).unwrap(), crate::meantail::geometric_f(&p).unwrap());
        }
    }

    #[test]
    fn a_examples_both_routes() {
        for (r, n, v) in [(2, 2, ratio(4, 9)), (3, 3, ratio(27, 64)), (3, 4, ratio(297, 625)), (1, 1, ratio(1, 2))] {
            assert_eq!(pascal_a(r, n).unwrap(), v, "sum route r={r} n={n}");
            assert_eq!(pascal_a_via_binomial(r, n).unwrap(), v, "binomial route r={r} n={n}");
        }
        assert!(pascal_a(3, 2).is_err());
        assert!(pascal_a(0, 2).is_err());
    }

    #[test]
    fn closed_form_examples() {
        assert_eq!(a2_closed(2).unwrap(), ratio(4, 9));
        assert_eq!(a2_closed(3).unwrap(), ratio(1, 2));
        assert_eq!(a2_closed(4).unwrap(), ratio(328, 625));
        assert_eq!(a3_closed(3).unwrap(), ratio(27, 64));
        assert_eq!(a3_closed(4).unwrap(), ratio(297, 625));
        assert_eq!(a3_closed(5).unwrap(), ratio(1, 2));
        assert_eq!(b2(3).unwrap(), ratio(1, 2));
        assert_eq!(b2(4).unwrap(), ratio(297, 625));
        assert_eq!(b3(4).unwrap(), ratio(328, 625));
        assert!(a2_closed(1).is_err());
        assert!(a3_closed(2).is_err());
        assert!(b2(2).is_err());
        assert!(b3(3).is_err());
    }

    #[test]
    fn g_matches_pmf() {
        let p = ratio(11, 20);
        assert_eq!(pascal_g(2, 3, &p).unwrap(), pascal_pmf(&PascalParams::new(2, p.clone()).unwrap(), 3));
    }

    #[test]
    fn excess_sign_matches_rational_comparison() {
        for r in 1..=6u64 {
            let first = pascal_a(r, r).unwrap();
            let mut powers = SelfPowers::new(1, r as usize + 1);
            // Window must cover [n + 1 - r, n + 1] starting at n = r.
            for n in r..=r + 40 {
                let expected = pascal_a(r, n).unwrap().cmp(&first);
                assert_eq!(excess_over_first_piece(r, n, &powers), expected, "r={r} n={n}");
                let den = BigInt::from(n + 1).pow(n as u32);
                let num = BigInt::from(complement_numerator(r, n));
                assert_eq!(Rational::new(num, den), &Rational::one() - &pascal_a(r, n).unwrap());
                powers.advance();
            }
        }
    }

    #[test]
    fn sweep_finds_no_violation_on_small_ranges() {
        let out = sweep_pascal_minimum(&[1, 2, 3, 5], 900);
        for s in &out {
            assert_eq!(s.first_violation, None, "r = {}", s.r);
            assert_eq!(s.checked, 900 - s.r);
        }
        assert_eq!(geometric_a_increasing_violation(900), None);
    }
}
