//! Certified `exp` and `ln` on rational arguments.

use num_bigint::BigInt;
use num_traits::{One, Signed};

use super::certified::CertifiedReal;
use super::rational::Rational;
use crate::error::{domain, Error, Result};

/// Hard cap on series terms before giving up.
const MAX_SERIES_TERMS: u64 = 200_000;
/// Guard bits added per retry when a radius target is missed.
const RETRY_STEP: u32 = 32;
const MAX_EXTRA_BITS: u32 = 4096;

fn pow2(k: i64) -> Rational {
    if k >= 0 {
        Rational::from_integer(BigInt::one() << k as usize)
    } else {
        Rational::new(1, BigInt::one() << (-k) as usize)
    }
}

/// Smallest `t` with `|q| < 2^t`.
fn log2_upper(q: &Rational) -> i64 {
    q.numer().bits() as i64 - q.denom().bits() as i64 + 1
}

/// Largest `e >= 0` with `|q| <= 2^-e`, for `0 < |q| <= 1`.
fn neg_log2_lower(q: &Rational) -> i64 {
    let ratio = q.denom() / q.numer().abs();
    (ratio.bits() as i64 - 1).max(0)
}

/// Enclosure of `e^x` whose radius is at most `2^-precision_bits * e^x`
/// (hence within `2^-precision_bits * max(1, e^x)`).
///
/// The argument is halved `s` times until `|x / 2^s| < 2^-8`, the Taylor
/// series is summed with a geometric tail bound, and the result is squared
/// back up `s` times.
pub fn exp_enclosure(x: &Rational, precision_bits: u32) -> Result<CertifiedReal> {
    if precision_bits < 8 {
        return Err(domain(format!("precision_bits must be >= 8, got {precision_bits}")));
    }
    if x.is_zero() {
        return Ok(CertifiedReal::one(precision_bits));
    }
    let halvings = (log2_upper(x) + 8).max(0);
    let reduced = x * &pow2(-halvings);
    let mut extra = 16u32;
    loop {
        let work = precision_bits + halvings as u32 + extra;
        let y = CertifiedReal::from_rational(&reduced, work);
        // |y| < 2^-8, so the k-th term is below 2^-8k and the tail after
        // term K is below 2 * 2^-8(K+1).
        let terms = (work as u64 + 8).div_ceil(8);
        if terms > MAX_SERIES_TERMS {
            return Err(Error::PrecisionExhausted(format!("exp series needs {terms} terms")));
        }
        let mut term = CertifiedReal::one(work);
        let mut sum = CertifiedReal::one(work);
        for k in 1..=terms {
            term = term.mul(&y).div(&CertifiedReal::from_rational(&Rational::from_integer(k), work))?;
            sum = sum.add(&term);
        }
        let tail = pow2(1 - 8 * (terms as i64 + 1));
        let mut value = sum.add(&CertifiedReal::new(&Rational::zero(), &tail, work));
        for _ in 0..halvings {
            value = value.square();
        }
        let value = value.with_precision_bits(precision_bits);
        let lower = value.lower();
        let positive = lower.is_positive();
        let scale = if lower > Rational::one() { lower } else { Rational::one() };
        if positive && value.radius() <= &pow2(-(precision_bits as i64)) * &scale {
            return Ok(value);
        }
        extra += RETRY_STEP;
        if extra > MAX_EXTRA_BITS {
            return Err(Error::PrecisionExhausted(format!(
                "exp({x}) could not reach {precision_bits} bits"
            )));
        }
    }
}

/// `atanh(z)` for a rational `0 < |z| <= 1/2` at `work` bits, with the
/// series tail folded into the radius.
fn atanh_series(z: &Rational, work: u32) -> Result<CertifiedReal> {
    if z.is_zero() {
        return Ok(CertifiedReal::zero(work));
    }
    let e = neg_log2_lower(z).max(1);
    let zb = CertifiedReal::from_rational(z, work);
    let z2 = zb.square();
    // Terms z^(2i+1)/(2i+1) for i < count; the tail is below
    // |z|^(2 count + 1) / (1 - z^2) <= 2 * 2^(-e (2 count + 1)).
    let count = ((work as i64 + 8) / e + 1) as u64 / 2 + 1;
    if count > MAX_SERIES_TERMS {
        return Err(Error::PrecisionExhausted(format!("atanh series needs {count} terms")));
    }
    let mut power = zb.clone();
    let mut sum = zb;
    for i in 1..count {
        power = power.mul(&z2);
        let denom = CertifiedReal::from_rational(&Rational::from_integer(2 * i + 1), work);
        sum = sum.add(&power.div(&denom)?);
    }
    let tail = pow2(1 - e * (2 * count as i64 + 1));
    Ok(sum.add(&CertifiedReal::new(&Rational::zero(), &tail, work)))
}

/// Enclosure of `ln 2`, via `2 atanh(1/3)`.
pub fn ln2_enclosure(precision_bits: u32) -> Result<CertifiedReal> {
    let v = atanh_series(&Rational::new(1, 3), precision_bits + 16)?.mul_pow2(1);
    Ok(v.with_precision_bits(precision_bits))
}

/// Enclosure of `ln(a / b)` with absolute radius at most `2^-precision_bits`.
///
/// The ratio is written `2^k t` with `t` in `[3/4, 3/2)`, and `ln t` is
/// `2 atanh((t - 1) / (t + 1))` with `|(t - 1)/(t + 1)| <= 1/5`.
pub fn ln_ratio_enclosure(a: &Rational, b: &Rational, precision_bits: u32) -> Result<CertifiedReal> {
    if !a.is_positive() || !b.is_positive() {
        return Err(domain(format!("ln of a/b needs a, b > 0 (got {a}, {b})")));
    }
    if precision_bits < 8 {
        return Err(domain(format!("precision_bits must be >= 8, got {precision_bits}")));
    }
    let q = a / b;
    if q.is_one() {
        return Ok(CertifiedReal::zero(precision_bits));
    }
    let mut k = q.numer().bits() as i64 - q.denom().bits() as i64;
    let mut t = &q * &pow2(-k);
    let (lo, hi) = (Rational::new(3, 4), Rational::new(3, 2));
    while t >= hi {
        k += 1;
        t = &t * &Rational::new(1, 2);
    }
    while t < lo {
        k -= 1;
        t = &t * &Rational::from_integer(2);
    }
    let z = &(&t - &Rational::one()) / &(&t + &Rational::one());
    let target = pow2(-(precision_bits as i64));
    let mut extra = 16 + (64 - k.unsigned_abs().leading_zeros());
    loop {
        let work = precision_bits + extra;
        let mut value = atanh_series(&z, work)?.mul_pow2(1);
        if k != 0 {
            let ln2 = atanh_series(&Rational::new(1, 3), work)?.mul_pow2(1);
            value = value.add(&ln2.mul_rational(&Rational::from_integer(k)));
        }
        let value = value.with_precision_bits(precision_bits);
        if value.radius() <= target {
            return Ok(value);
        }
        extra += RETRY_STEP;
        if extra > MAX_EXTRA_BITS {
            return Err(Error::PrecisionExhausted(format!("ln({q}) could not reach {precision_bits} bits")));
        }
    }
}
