//! Midpoint-radius enclosures over dyadic numbers.

use std::cmp::Ordering;
use std::fmt;

use num_bigint::BigInt;
use num_integer::Integer;
use num_traits::{One, Signed, Zero};

use super::rational::Rational;
use crate::error::{Error, Result};

/// Working precision used when callers do not ask for one.
pub const DEFAULT_PRECISION_BITS: u32 = 192;
/// Ceiling for adaptive precision doubling.
pub const DEFAULT_MAX_PRECISION_BITS: u32 = 4096;

/// Radii keep this many mantissa bits, rounded upward.
const RADIUS_BITS: u64 = 64;

/// `man * 2^exp`, normalized so `man` is odd (or zero with `exp == 0`).
#[derive(Clone, PartialEq, Eq, Hash)]
pub(crate) struct Dyadic {
    man: BigInt,
    exp: i64,
}

impl Dyadic {
    pub(crate) fn zero() -> Self {
        Self { man: BigInt::zero(), exp: 0 }
    }

    pub(crate) fn new(man: BigInt, exp: i64) -> Self {
        if man.is_zero() {
            return Self::zero();
        }
        let tz = man.trailing_zeros().unwrap_or(0);
        if tz == 0 {
            Self { man, exp }
        } else {
            Self { man: man >> tz, exp: exp + tz as i64 }
        }
    }

    pub(crate) fn pow2(exp: i64) -> Self {
        Self { man: BigInt::one(), exp }
    }

    pub(crate) fn is_zero(&self) -> bool {
        self.man.is_zero()
    }

    fn is_negative(&self) -> bool {
        self.man.is_negative()
    }

    fn abs(&self) -> Self {
        Self { man: self.man.abs(), exp: self.exp }
    }

    fn neg(&self) -> Self {
        Self { man: -&self.man, exp: self.exp }
    }

    /// Exponent of the leading bit plus one: `|x| < 2^top`.
    fn top(&self) -> i64 {
        self.exp + self.man.bits() as i64
    }

    fn add(&self, other: &Self) -> Self {
        if self.is_zero() {
            return other.clone();
        }
        if other.is_zero() {
            return self.clone();
        }
        let e = self.exp.min(other.exp);
        let a = &self.man << (self.exp - e) as usize;
        let b = &other.man << (other.exp - e) as usize;
        Self::new(a + b, e)
    }

    fn mul(&self, other: &Self) -> Self {
        Self::new(&self.man * &other.man, self.exp + other.exp)
    }

    fn cmp_value(&self, other: &Self) -> Ordering {
        let d = self.add(&other.neg());
        match d.man.sign() {
            num_bigint::Sign::Minus => Ordering::Less,
            num_bigint::Sign::NoSign => Ordering::Equal,
            num_bigint::Sign::Plus => Ordering::Greater,
        }
    }

    /// Truncates the mantissa to `bits` bits; returns the result and an upper
    /// bound on the discarded magnitude (zero when exact).
    fn round(&self, bits: u64) -> (Self, Self) {
        let len = self.man.bits();
        if len <= bits {
            return (self.clone(), Self::zero());
        }
        let shift = len - bits;
        let mag = self.man.magnitude() >> shift as usize;
        let man = if self.is_negative() { -BigInt::from(mag) } else { BigInt::from(mag) };
        let exp = self.exp + shift as i64;
        (Self::new(man, exp), Self::pow2(exp))
    }

    /// Rounds a non-negative value up to `bits` mantissa bits.
    fn round_up(&self, bits: u64) -> Self {
        debug_assert!(!self.is_negative());
        let len = self.man.bits();
        if len <= bits {
            return self.clone();
        }
        let shift = len - bits;
        let mut mag = self.man.magnitude() >> shift as usize;
        mag += 1u32;
        Self::new(BigInt::from(mag), self.exp + shift as i64)
    }

    /// Upper bound on `self / other` for non-negative `self`, positive `other`.
    fn div_up(&self, other: &Self) -> Self {
        debug_assert!(!self.is_negative() && other.man.is_positive());
        if self.is_zero() {
            return Self::zero();
        }
        let s = RADIUS_BITS as i64 + other.man.bits() as i64 - self.man.bits() as i64 + 2;
        let s = s.max(0);
        let (q, r) = (&self.man << s as usize).div_rem(&other.man);
        let q = if r.is_zero() { q } else { q + 1 };
        Self::new(q, self.exp - other.exp - s).round_up(RADIUS_BITS)
    }

    pub(crate) fn to_rational(&self) -> Rational {
        if self.exp >= 0 {
            Rational::from_integer(&self.man << self.exp as usize)
        } else {
            Rational::from_canonical(self.man.clone(), BigInt::one() << (-self.exp) as usize)
        }
    }

    /// Truncated quotient `num / den` with `bits` significant bits, plus the
    /// error bound. Exact when `den` is a power of two.
    fn from_fraction(num: &BigInt, den: &BigInt, bits: u64) -> (Self, Self) {
        debug_assert!(den.is_positive());
        let den_mag = den.magnitude();
        if den_mag.count_ones() == 1 {
            let k = den_mag.bits() as i64 - 1;
            let exact = Self::new(num.clone(), -k);
            return exact.round(bits);
        }
        if num.is_zero() {
            return (Self::zero(), Self::zero());
        }
        let s = bits as i64 + den.bits() as i64 - num.bits() as i64 + 2;
        let q = if s >= 0 {
            (num << s as usize) / den
        } else {
            num / (den << (-s) as usize)
        };
        let (d, err) = Self::new(q, -s).round(bits);
        (d, err.add(&Self::pow2(-s)))
    }
}

impl fmt::Debug for Dyadic {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{}*2^{}", self.man, self.exp)
    }
}

/// A real number known only through an enclosure `[mid - rad, mid + rad]`.
///
/// Both ends are dyadic rationals. Arithmetic rounds midpoints to the
/// working precision and folds every rounding error into the radius, so the
/// enclosure always contains the true result.
#[derive(Clone, PartialEq, Eq)]
pub struct CertifiedReal {
    mid: Dyadic,
    rad: Dyadic,
    precision_bits: u32,
}

impl CertifiedReal {
    /// Enclosure of `mid ± rad`. A non-dyadic midpoint is rounded and the
    /// rounding error added to the radius.
    pub fn new(mid: &Rational, rad: &Rational, precision_bits: u32) -> Self {
        assert!(!rad.is_negative(), "negative enclosure radius");
        let point = Self::from_rational(mid, precision_bits);
        let (r, r_err) = Dyadic::from_fraction(rad.numer(), rad.denom(), RADIUS_BITS);
        let r = r.add(&r_err).round_up(RADIUS_BITS);
        Self {
            rad: point.rad.add(&r).round_up(RADIUS_BITS),
            ..point
        }
    }

    /// Tightest enclosure of `q` at `precision_bits` (exact if dyadic).
    pub fn from_rational(q: &Rational, precision_bits: u32) -> Self {
        Self::from_fraction(q.numer(), q.denom(), precision_bits)
    }

    /// Enclosure of `num / den` for an unreduced fraction, `den > 0`.
    pub fn from_fraction(num: &BigInt, den: &BigInt, precision_bits: u32) -> Self {
        let (mid, err) = Dyadic::from_fraction(num, den, precision_bits as u64);
        Self { mid, rad: err.round_up(RADIUS_BITS), precision_bits }
    }

    pub fn zero(precision_bits: u32) -> Self {
        Self { mid: Dyadic::zero(), rad: Dyadic::zero(), precision_bits }
    }

    pub fn one(precision_bits: u32) -> Self {
        Self { mid: Dyadic::pow2(0), rad: Dyadic::zero(), precision_bits }
    }

    pub fn midpoint(&self) -> Rational {
        self.mid.to_rational()
    }

    pub fn radius(&self) -> Rational {
        self.rad.to_rational()
    }

    pub fn precision_bits(&self) -> u32 {
        self.precision_bits
    }

    pub fn with_precision_bits(mut self, precision_bits: u32) -> Self {
        self.precision_bits = precision_bits;
        self
    }

    pub fn lower(&self) -> Rational {
        self.mid.add(&self.rad.neg()).to_rational()
    }

    pub fn upper(&self) -> Rational {
        self.mid.add(&self.rad).to_rational()
    }

    pub fn is_exact(&self) -> bool {
        self.rad.is_zero()
    }

    pub fn contains(&self, q: &Rational) -> bool {
        &self.lower() <= q && q <= &self.upper()
    }

    /// Every point of `self` is strictly positive.
    pub fn is_positive(&self) -> bool {
        self.mid.cmp_value(&self.rad) == Ordering::Greater
    }

    /// Every point of `self` is strictly negative.
    pub fn is_negative(&self) -> bool {
        self.mid.neg().cmp_value(&self.rad) == Ordering::Greater
    }

    pub fn overlaps(&self, other: &Self) -> bool {
        let gap = self.sub(other);
        !gap.is_positive() && !gap.is_negative()
    }

    /// `self < other` for every pair of enclosed points.
    pub fn certainly_less(&self, other: &Self) -> bool {
        other.sub(self).is_positive()
    }

    /// `log2` of the relative radius, for diagnostics; `None` if exact or
    /// the midpoint is zero.
    pub fn relative_accuracy_bits(&self) -> Option<i64> {
        if self.rad.is_zero() || self.mid.is_zero() {
            return None;
        }
        Some(self.mid.top() - 1 - self.rad.top())
    }

    fn work_bits(&self, other: &Self) -> u32 {
        self.precision_bits.max(other.precision_bits)
    }

    fn finish(mid: Dyadic, rad: Dyadic, precision_bits: u32) -> Self {
        let (mid, err) = mid.round(precision_bits as u64);
        Self {
            mid,
            rad: rad.add(&err).round_up(RADIUS_BITS),
            precision_bits,
        }
    }

    pub fn neg(&self) -> Self {
        Self { mid: self.mid.neg(), rad: self.rad.clone(), precision_bits: self.precision_bits }
    }

    pub fn abs(&self) -> Self {
        if !self.mid.is_negative() {
            return self.clone();
        }
        self.neg()
    }

    pub fn add(&self, other: &Self) -> Self {
        let bits = self.work_bits(other);
        let rad = self.rad.add(&other.rad);
        // An addend far below the other's last kept bit only widens the radius.
        let guard = bits as i64 + 64;
        if !self.mid.is_zero() && !other.mid.is_zero() {
            if other.mid.top() < self.mid.top() - guard {
                return Self::finish(self.mid.clone(), rad.add(&Dyadic::pow2(other.mid.top())), bits);
            }
            if self.mid.top() < other.mid.top() - guard {
                return Self::finish(other.mid.clone(), rad.add(&Dyadic::pow2(self.mid.top())), bits);
            }
        }
        Self::finish(self.mid.add(&other.mid), rad, bits)
    }

    pub fn sub(&self, other: &Self) -> Self {
        self.add(&other.neg())
    }

    pub fn mul(&self, other: &Self) -> Self {
        let bits = self.work_bits(other);
        let a = self.mid.abs();
        let b = other.mid.abs();
        let rad = a
            .mul(&other.rad)
            .add(&b.mul(&self.rad))
            .add(&self.rad.mul(&other.rad))
            .round_up(RADIUS_BITS);
        Self::finish(self.mid.mul(&other.mid), rad, bits)
    }

    /// Quotient; fails when the divisor's enclosure contains zero.
    pub fn div(&self, other: &Self) -> Result<Self> {
        let bits = self.work_bits(other);
        let b_abs = other.mid.abs();
        let b_low = b_abs.add(&other.rad.neg());
        if b_low.is_negative() || b_low.is_zero() {
            return Err(Error::PrecisionExhausted("divisor enclosure contains zero".into()));
        }
        let s = bits as i64 + other.mid.man.bits() as i64 - self.mid.man.bits() as i64 + 2;
        let s = s.max(0);
        let q_man = (&self.mid.man << s as usize) / &other.mid.man;
        let q = Dyadic::new(q_man, self.mid.exp - other.mid.exp - s);
        let ulp = Dyadic::pow2(self.mid.exp - other.mid.exp - s);
        // |a/b - ma/mb| <= (ra + |ma/mb| rb) / (|mb| - rb)
        let q_abs_up = q.abs().add(&ulp);
        let numer = self.rad.add(&q_abs_up.mul(&other.rad)).round_up(RADIUS_BITS);
        let rad = numer.div_up(&b_low).add(&ulp);
        Ok(Self::finish(q, rad, bits))
    }

    pub fn mul_rational(&self, q: &Rational) -> Self {
        self.mul(&Self::from_rational(q, self.precision_bits))
    }

    pub fn add_rational(&self, q: &Rational) -> Self {
        self.add(&Self::from_rational(q, self.precision_bits))
    }

    /// Multiplies by `2^k` exactly.
    pub fn mul_pow2(&self, k: i64) -> Self {
        let shift = |d: &Dyadic| if d.is_zero() { d.clone() } else { Dyadic { man: d.man.clone(), exp: d.exp + k } };
        Self { mid: shift(&self.mid), rad: shift(&self.rad), precision_bits: self.precision_bits }
    }

    /// `self^2`, tighter than `mul(self, self)` because the factors coincide.
    pub fn square(&self) -> Self {
        let a = self.mid.abs();
        let two_a = Dyadic { man: a.man.clone(), exp: a.exp + 1 };
        let rad = if a.is_zero() {
            self.rad.mul(&self.rad)
        } else {
            two_a.mul(&self.rad).add(&self.rad.mul(&self.rad))
        }
        .round_up(RADIUS_BITS);
        Self::finish(self.mid.mul(&self.mid), rad, self.precision_bits)
    }

    /// Midpoint as a double, for display.
    pub fn to_f64(&self) -> f64 {
        self.midpoint().to_f64()
    }

    /// Upper bound on `|x|` over the enclosure.
    pub fn magnitude_upper(&self) -> Rational {
        self.mid.abs().add(&self.rad).to_rational()
    }
}

impl fmt::Debug for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "[{} ± {} @{}]",
            self.midpoint().to_decimal_string(20),
            self.radius().to_scientific_upper(3),
            self.precision_bits
        )
    }
}

impl fmt::Display for CertifiedReal {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Debug::fmt(self, f)
    }
}
