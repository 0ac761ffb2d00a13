use std::cmp::Ordering;
use std::fmt;
use std::ops::{Add, Div, Mul, Neg, Sub};
use std::str::FromStr;
use std::sync::atomic::{AtomicU64, Ordering as AtomicOrdering};

use num_bigint::{BigInt, Sign as BigSign};
use num_integer::Integer;
use num_traits::{One, Signed, ToPrimitive, Zero};

use crate::error::Error;

/// Default cap on the bit length of any single numerator.
pub const DEFAULT_NUMERATOR_BIT_LIMIT: u64 = 100_000_000;

static NUMERATOR_BIT_LIMIT: AtomicU64 = AtomicU64::new(DEFAULT_NUMERATOR_BIT_LIMIT);

/// Sets the memory guard applied to every constructed [`Rational`].
///
/// Construction panics once a numerator grows past `bits`.
pub fn set_numerator_bit_limit(bits: u64) {
    NUMERATOR_BIT_LIMIT.store(bits, AtomicOrdering::Relaxed);
}

pub fn numerator_bit_limit() -> u64 {
    NUMERATOR_BIT_LIMIT.load(AtomicOrdering::Relaxed)
}

/// Exact rational number kept in lowest terms with a positive denominator.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct Rational {
    num: BigInt,
    den: BigInt,
}

impl Rational {
    /// Builds `num / den` in canonical form.
    ///
    /// Panics if `den` is zero.
    pub fn new(num: impl Into<BigInt>, den: impl Into<BigInt>) -> Self {
        let (num, den) = (num.into(), den.into());
        assert!(!den.is_zero(), "rational with zero denominator");
        let g = num.gcd(&den);
        let (mut num, mut den) = if g.is_one() {
            (num, den)
        } else {
            (num / &g, den / &g)
        };
        if den.is_negative() {
            num = -num;
            den = -den;
        }
        Self::from_canonical(num, den)
    }

    pub fn from_integer(value: impl Into<BigInt>) -> Self {
        Self::from_canonical(value.into(), BigInt::one())
    }

    pub fn zero() -> Self {
        Self::from_integer(0)
    }

    pub fn one() -> Self {
        Self::from_integer(1)
    }

    /// Wraps parts already known to be coprime with `den > 0`.
    pub(crate) fn from_canonical(num: BigInt, den: BigInt) -> Self {
        debug_assert!(den.is_positive());
        let limit = numerator_bit_limit();
        assert!(
            num.bits() <= limit,
            "rational numerator of {} bits exceeds the {limit}-bit guard",
            num.bits()
        );
        Self { num, den }
    }

    /// Reduces `num / den` when every prime factor of `den` is in `primes`.
    ///
    /// Avoids a full gcd on the very large denominators (`b^n`, `(n+1)^n`,
    /// `m! b^m`) produced by exact tail sums.
    pub(crate) fn from_smooth_fraction(mut num: BigInt, mut den: BigInt, primes: &[u64]) -> Self {
        debug_assert!(den.is_positive());
        if num.is_zero() {
            return Self::zero();
        }
        for &p in primes {
            if p < 2 {
                continue;
            }
            let big_p = BigInt::from(p);
            // Strip in chunks of p^k to keep the number of passes small.
            let mut chunk = big_p.clone();
            while chunk.bits() < 64 {
                chunk *= &big_p;
            }
            loop {
                let (qn, rn) = num.div_rem(&chunk);
                if !rn.is_zero() {
                    break;
                }
                let (qd, rd) = den.div_rem(&chunk);
                if !rd.is_zero() {
                    break;
                }
                num = qn;
                den = qd;
            }
            loop {
                let (qn, rn) = num.div_rem(&big_p);
                if !rn.is_zero() {
                    break;
                }
                let (qd, rd) = den.div_rem(&big_p);
                if !rd.is_zero() {
                    break;
                }
                num = qn;
                den = qd;
            }
        }
        debug_assert!(den.bits() > 4096 || num.gcd(&den).is_one());
        Self::from_canonical(num, den)
    }

    /// Reduces `num / den`, using prime-smooth stripping when the factors of
    /// `den` are known to lie in `primes`, else a full gcd.
    pub(crate) fn from_fraction_hint(num: BigInt, den: BigInt, primes: Option<&[u64]>) -> Self {
        match primes {
            Some(primes) => Self::from_smooth_fraction(num, den, primes),
            None => Self::new(num, den),
        }
    }

    pub fn numer(&self) -> &BigInt {
        &self.num
    }

    pub fn denom(&self) -> &BigInt {
        &self.den
    }

    pub fn into_parts(self) -> (BigInt, BigInt) {
        (self.num, self.den)
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn is_one(&self) -> bool {
        self.num.is_one() && self.den.is_one()
    }

    pub fn is_integer(&self) -> bool {
        self.den.is_one()
    }

    pub fn is_positive(&self) -> bool {
        self.num.is_positive()
    }

    pub fn is_negative(&self) -> bool {
        self.num.is_negative()
    }

    /// True when the denominator is a power of two.
    pub fn is_dyadic(&self) -> bool {
        let d = self.den.magnitude();
        d.count_ones() == 1
    }

    pub fn abs(&self) -> Self {
        Self::from_canonical(self.num.abs(), self.den.clone())
    }

    /// Panics on zero.
    pub fn recip(&self) -> Self {
        assert!(!self.is_zero(), "reciprocal of zero");
        if self.num.is_negative() {
            Self::from_canonical(-self.den.clone(), -self.num.clone())
        } else {
            Self::from_canonical(self.den.clone(), self.num.clone())
        }
    }

    /// Integer power; negative exponents take the reciprocal first.
    pub fn pow(&self, exp: i64) -> Self {
        let base = if exp < 0 { self.recip() } else { self.clone() };
        let e = u32::try_from(exp.unsigned_abs()).expect("exponent out of range");
        // Powers of coprime parts stay coprime.
        Self::from_canonical(num_traits::pow(base.num, e as usize), num_traits::pow(base.den, e as usize))
    }

    /// Largest integer not above `self`.
    pub fn floor(&self) -> BigInt {
        self.num.div_floor(&self.den)
    }

    pub fn ceil(&self) -> BigInt {
        -((-&self.num).div_floor(&self.den))
    }

    /// Nearest-double approximation, for display and plotting only.
    pub fn to_f64(&self) -> f64 {
        if let (Some(n), Some(d)) = (self.num.to_f64(), self.den.to_f64()) {
            if n.is_finite() && d.is_finite() && d != 0.0 {
                return n / d;
            }
        }
        let shift = self.num.bits() as i64 - self.den.bits() as i64 - 60;
        let (n, d) = if shift > 0 {
            (self.num.clone(), &self.den << (shift as usize))
        } else {
            (&self.num << ((-shift) as usize), self.den.clone())
        };
        let q = (n / d).to_f64().unwrap_or(f64::NAN);
        q * 2f64.powi(shift.clamp(i32::MIN as i64, i32::MAX as i64) as i32)
    }

    /// Fixed-point rendering with `digits` fractional digits, rounded half
    /// away from zero.
    pub fn to_decimal_string(&self, digits: usize) -> String {
        let scale = num_traits::pow(BigInt::from(10), digits);
        let twice = (self.num.abs() * &scale * 2u32) + &self.den;
        let scaled = twice / (&self.den * 2u32);
        let mut body = scaled.to_string();
        if digits > 0 {
            if body.len() <= digits {
                body = format!("{}{}", "0".repeat(digits + 1 - body.len()), body);
            }
            body.insert(body.len() - digits, '.');
        }
        if self.num.is_negative() && body.chars().any(|c| c != '0' && c != '.') {
            body.insert(0, '-');
        }
        body
    }

    /// Scientific rendering with `sig` significant digits, rounded away from
    /// zero so the printed magnitude never understates the value. Used for
    /// enclosure radii.
    pub fn to_scientific_upper(&self, sig: usize) -> String {
        if self.is_zero() {
            return "0".to_string();
        }
        let sig = sig.max(1);
        let mag = self.abs();
        let ten = Rational::from_integer(10);
        // 10^e <= mag < 10^(e+1)
        let approx = (mag.num.bits() as f64 - mag.den.bits() as f64) * std::f64::consts::LOG10_2;
        let mut e = approx.floor() as i64;
        while ten.pow(e) > mag {
            e -= 1;
        }
        while ten.pow(e + 1) <= mag {
            e += 1;
        }
        let scaled = &mag / &ten.pow(e - (sig as i64 - 1));
        let mut digits = scaled.ceil();
        let mut exp = e;
        if digits.to_string().len() > sig {
            digits = (digits + 9u32) / 10u32;
            exp += 1;
        }
        let s = digits.to_string();
        let mantissa = if s.len() > 1 {
            format!("{}.{}", &s[..1], &s[1..])
        } else {
            s
        };
        let sign = if self.is_negative() { "-" } else { "" };
        format!("{sign}{mantissa}e{exp}")
    }

    /// Always renders as `p/q`, including integers (`3/1`).
    pub fn to_fraction_string(&self) -> String {
        format!("{}/{}", self.num, self.den)
    }
}

impl Default for Rational {
    fn default() -> Self {
        Self::zero()
    }
}

impl fmt::Display for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den.is_one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "{}/{}", self.num, self.den)
        }
    }
}

impl fmt::Debug for Rational {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        fmt::Display::fmt(self, f)
    }
}

impl FromStr for Rational {
    type Err = Error;

    /// Accepts `a/b`, integers, and decimal literals such as `0.6` or
    /// `-1.25e-3`, all parsed exactly.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let bad = || Error::Parse(format!("not a rational number: {s:?}"));
        let s = s.trim();
        if let Some((n, d)) = s.split_once('/') {
            let n: BigInt = n.trim().parse().map_err(|_| bad())?;
            let d: BigInt = d.trim().parse().map_err(|_| bad())?;
            if d.is_zero() {
                return Err(Error::Parse(format!("zero denominator in {s:?}")));
            }
            return Ok(Rational::new(n, d));
        }
        let (mantissa, exponent) = match s.find(['e', 'E']) {
            Some(i) => (&s[..i], s[i + 1..].parse::<i64>().map_err(|_| bad())?),
            None => (s, 0),
        };
        let (negative, unsigned) = match mantissa.strip_prefix('-') {
            Some(rest) => (true, rest),
            None => (false, mantissa.strip_prefix('+').unwrap_or(mantissa)),
        };
        let (int_part, frac_part) = unsigned.split_once('.').unwrap_or((unsigned, ""));
        if int_part.is_empty() && frac_part.is_empty() {
            return Err(bad());
        }
        if !int_part.chars().chain(frac_part.chars()).all(|c| c.is_ascii_digit()) {
            return Err(bad());
        }
        let digits: BigInt = format!("0{int_part}{frac_part}").parse().map_err(|_| bad())?;
        let signed = if negative { -digits } else { digits };
        let ten = Rational::from_integer(10);
        let scale = exponent - frac_part.len() as i64;
        Ok(&Rational::from_integer(signed) * &ten.pow(scale))
    }
}

impl PartialOrd for Rational {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

impl Ord for Rational {
    fn cmp(&self, other: &Self) -> Ordering {
        if self.den == other.den {
            return self.num.cmp(&other.num);
        }
        match (self.num.sign(), other.num.sign()) {
            (a, b) if a != b => return sign_rank(a).cmp(&sign_rank(b)),
            _ => {}
        }
        (&self.num * &other.den).cmp(&(&other.num * &self.den))
    }
}

fn sign_rank(s: BigSign) -> i8 {
    match s {
        BigSign::Minus => -1,
        BigSign::NoSign => 0,
        BigSign::Plus => 1,
    }
}

impl Add<&Rational> for &Rational {
    type Output = Rational;

    fn add(self, rhs: &Rational) -> Rational {
        if self.den == rhs.den {
            if self.den.is_one() {
                return Rational::from_integer(&self.num + &rhs.num);
            }
            return Rational::new(&self.num + &rhs.num, self.den.clone());
        }
        // An integer plus a canonical fraction stays canonical.
        if self.den.is_one() {
            return Rational::from_canonical(&self.num * &rhs.den + &rhs.num, rhs.den.clone());
        }
        if rhs.den.is_one() {
            return Rational::from_canonical(&rhs.num * &self.den + &self.num, self.den.clone());
        }
        Rational::new(&self.num * &rhs.den + &rhs.num * &self.den, &self.den * &rhs.den)
    }
}

impl Neg for &Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational::from_canonical(-&self.num, self.den.clone())
    }
}

impl Neg for Rational {
    type Output = Rational;

    fn neg(self) -> Rational {
        Rational::from_canonical(-self.num, self.den)
    }
}

impl Sub<&Rational> for &Rational {
    type Output = Rational;

    fn sub(self, rhs: &Rational) -> Rational {
        self + &(-rhs)
    }
}

impl Mul<&Rational> for &Rational {
    type Output = Rational;

    fn mul(self, rhs: &Rational) -> Rational {
        if self.is_zero() || rhs.is_zero() {
            return Rational::zero();
        }
        // Cross-cancel first so the gcds run on the smaller operands.
        let g1 = self.num.gcd(&rhs.den);
        let g2 = rhs.num.gcd(&self.den);
        let num = (&self.num / &g1) * (&rhs.num / &g2);
        let den = (&self.den / &g2) * (&rhs.den / &g1);
        Rational::from_canonical(num, den)
    }
}

impl Div<&Rational> for &Rational {
    type Output = Rational;

    fn div(self, rhs: &Rational) -> Rational {
        self * &rhs.recip()
    }
}

macro_rules! forward_owned_binop {
    ($($trait:ident $method:ident),*) => {$(
        impl $trait<Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                (&self).$method(&rhs)
            }
        }
        impl $trait<&Rational> for Rational {
            type Output = Rational;
            fn $method(self, rhs: &Rational) -> Rational {
                (&self).$method(rhs)
            }
        }
        impl $trait<Rational> for &Rational {
            type Output = Rational;
            fn $method(self, rhs: Rational) -> Rational {
                self.$method(&rhs)
            }
        }
    )*};
}

forward_owned_binop!(Add add, Sub sub, Mul mul, Div div);

impl From<i64> for Rational {
    fn from(v: i64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<u64> for Rational {
    fn from(v: u64) -> Self {
        Rational::from_integer(v)
    }
}

impl From<BigInt> for Rational {
    fn from(v: BigInt) -> Self {
        Rational::from_integer(v)
    }
}

/// Shorthand for `Rational::new(n, d)` on machine integers.
pub fn ratio(n: i64, d: i64) -> Rational {
    Rational::new(n, d)
}

#[cfg(test)]
mod tests {
    use super::*;
    use proptest::prelude::*;

    #[test]
    fn canonical_form_on_construction() {
        let q = Rational::new(6, -4);
        assert_eq!(q.numer(), &BigInt::from(-3));
        assert_eq!(q.denom(), &BigInt::from(2));
        assert_eq!(Rational::new(0, -7), Rational::zero());
    }

    #[test]
    fn parses_fractions_and_decimals_exactly() {
        assert_eq!("0.6".parse::<Rational>().unwrap(), ratio(3, 5));
        assert_eq!("2/3".parse::<Rational>().unwrap(), ratio(2, 3));
        assert_eq!("-1.25e-1".parse::<Rational>().unwrap(), ratio(-1, 8));
        assert_eq!("7".parse::<Rational>().unwrap(), ratio(7, 1));
        assert_eq!(".5".parse::<Rational>().unwrap(), ratio(1, 2));
        assert!("1/0".parse::<Rational>().is_err());
        assert!("abc".parse::<Rational>().is_err());
        assert!("1.2.3".parse::<Rational>().is_err());
    }

    #[test]
    fn floor_and_ceil() {
        assert_eq!(ratio(7, 2).floor(), BigInt::from(3));
        assert_eq!(ratio(-7, 2).floor(), BigInt::from(-4));
        assert_eq!(ratio(-7, 2).ceil(), BigInt::from(-3));
        assert_eq!(ratio(3, 1).floor(), BigInt::from(3));
    }

    #[test]
    fn decimal_rendering() {
        assert_eq!(ratio(3, 4).to_decimal_string(12), "0.750000000000");
        assert_eq!(ratio(20, 27).to_decimal_string(12), "0.740740740741");
        assert_eq!(ratio(-1, 3).to_decimal_string(3), "-0.333");
        assert_eq!(ratio(5, 1).to_decimal_string(0), "5");
    }

    #[test]
    fn scientific_rendering_rounds_up() {
        assert_eq!(ratio(1, 3).to_scientific_upper(2), "3.4e-1");
        assert_eq!(ratio(1, 1000).to_scientific_upper(2), "1.0e-3");
        assert_eq!(ratio(999, 1).to_scientific_upper(2), "1.0e3");
        let tiny = Rational::new(1, BigInt::one() << 200u32);
        assert_eq!(tiny.to_scientific_upper(3), "6.23e-61");
    }

    #[test]
    fn smooth_reduction_matches_gcd() {
        let num = BigInt::from(2 * 2 * 3 * 7);
        let den = BigInt::from(2 * 3 * 3 * 5);
        let q = Rational::from_smooth_fraction(num.clone(), den.clone(), &[2, 3, 5]);
        assert_eq!(q, Rational::new(num, den));
    }

    #[test]
    #[should_panic(expected = "guard")]
    fn memory_guard_fails_loudly() {
        let huge = BigInt::one() << 200_000_000u64;
        Rational::from_canonical(huge, BigInt::one());
    }

    fn small_rational() -> impl Strategy<Value = Rational> {
        (-10_000i64..10_000, 1i64..10_000).prop_map(|(n, d)| ratio(n, d))
    }

    proptest! {
        #[test]
        fn add_sub_round_trip(a in small_rational(), b in small_rational()) {
            prop_assert_eq!(&(&a + &b) - &b, a);
        }

        #[test]
        fn mul_div_round_trip(a in small_rational(), b in small_rational()) {
            prop_assume!(!b.is_zero());
            prop_assert_eq!(&(&a * &b) / &b, a);
        }

        #[test]
        fn ordering_agrees_with_difference_sign(a in small_rational(), b in small_rational()) {
            let diff = &a - &b;
            let expected = if diff.is_zero() { Ordering::Equal } else if diff.is_positive() { Ordering::Greater } else { Ordering::Less };
            prop_assert_eq!(a.cmp(&b), expected);
        }

        #[test]
        fn fraction_string_round_trips(a in small_rational()) {
            prop_assert_eq!(a.to_fraction_string().parse::<Rational>().unwrap(), a);
        }
    }
}
