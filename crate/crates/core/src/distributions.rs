//! Exact pmf/cdf evaluators.
//!
//! Tail sums are formed over a common denominator (`b^n` for `p = a/b`,
//! `m! b^m` for Poisson partial sums) with Horner's rule and reduced once at
//! the end.

use num_bigint::BigInt;
use num_traits::{One, Zero};

use crate::error::{domain, Result};
use crate::numerics::integer::{binom_row, homogeneous_sum, merge_primes, primes_up_to, small_prime_factors};
use crate::numerics::{exp_enclosure, CertifiedReal, Rational};

/// Binomial law `B(n, p)`; `p = 0` and `p = 1` are allowed.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BinomialParams {
    n: u64,
    p: Rational,
}

impl BinomialParams {
    pub fn new(n: u64, p: Rational) -> Result<Self> {
        if p.is_negative() || p > Rational::one() {
            return Err(domain(format!("binomial p must lie in [0, 1], got {p}")));
        }
        Ok(Self { n, p })
    }

    pub fn n(&self) -> u64 {
        self.n
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `E[B(n, p)] = n p`.
    pub fn mean(&self) -> Rational {
        &self.p * &Rational::from_integer(self.n)
    }
}

/// Poisson law with rational mean `lambda > 0`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PoissonParams {
    lambda: Rational,
}

impl PoissonParams {
    pub fn new(lambda: Rational) -> Result<Self> {
        if !lambda.is_positive() {
            return Err(domain(format!("Poisson lambda must be > 0, got {lambda}")));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> &Rational {
        &self.lambda
    }
}

/// Geometric law on `{1, 2, ...}` (trials up to the first success).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GeometricParams {
    p: Rational,
}

impl GeometricParams {
    pub fn new(p: Rational) -> Result<Self> {
        check_open_unit(&p, "geometric")?;
        Ok(Self { p })
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `E[Y] = 1/p`.
    pub fn mean(&self) -> Rational {
        self.p.recip()
    }
}

/// Pascal law: number of trials until the `r`-th success, support
/// `{r, r+1, ...}`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PascalParams {
    r: u64,
    p: Rational,
}

impl PascalParams {
    pub fn new(r: u64, p: Rational) -> Result<Self> {
        if r == 0 {
            return Err(domain("Pascal r must be >= 1"));
        }
        check_open_unit(&p, "Pascal")?;
        Ok(Self { r, p })
    }

    pub fn r(&self) -> u64 {
        self.r
    }

    pub fn p(&self) -> &Rational {
        &self.p
    }

    /// `E[B*(r, p)] = r/p`.
    pub fn mean(&self) -> Rational {
        &Rational::from_integer(self.r) / &self.p
    }
}

fn check_open_unit(p: &Rational, family: &str) -> Result<()> {
    if !p.is_positive() || p > &Rational::one() {
        return Err(domain(format!("{family} p must lie in (0, 1], got {p}")));
    }
    Ok(())
}

/// `(a, b - a, b)` for `p = a/b`, together with the primes of `b` when cheap.
fn split_probability(p: &Rational) -> (BigInt, BigInt, BigInt, Option<Vec<u64>>) {
    let a = p.numer().clone();
    let b = p.denom().clone();
    let primes = small_prime_factors(&b);
    (a.clone(), &b - &a, b, primes)
}

fn to_u32(e: u64) -> u32 {
    u32::try_from(e).expect("exponent exceeds u32")
}

/// `C(n, k) p^k (1-p)^(n-k)` for `0 <= k <= n`, else 0.
pub fn binomial_pmf(params: &BinomialParams, k: i64) -> Rational {
    let n = params.n;
    if k < 0 || k as u64 > n {
        return Rational::zero();
    }
    let k = k as u64;
    let (a, q, b, primes) = split_probability(&params.p);
    let c = BigInt::from(crate::numerics::binom_coeff(n, k));
    let num = c * a.pow(to_u32(k)) * q.pow(to_u32(n - k));
    Rational::from_fraction_hint(num, b.pow(to_u32(n)), primes.as_deref())
}

/// Numerator over `b^n` of `P(B(n, a/b) <= m)` for `0 <= m < n`.
fn binomial_cdf_numerator(n: u64, m: u64, a: &BigInt, q: &BigInt) -> BigInt {
    // sum_{k<=m} C(n,k) a^k q^(n-k) = q^(n-m) sum_{k<=m} C(n,k) a^k q^(m-k)
    let coeffs = binom_row(n, m);
    homogeneous_sum(&coeffs, a, q) * q.pow(to_u32(n - m))
}

/// `P(B(n, p) <= m)`; 0 for `m < 0`, 1 for `m >= n`.
pub fn binomial_cdf_leq(params: &BinomialParams, m: i64) -> Rational {
    let n = params.n;
    if m < 0 {
        return Rational::zero();
    }
    if m as u64 >= n {
        return Rational::one();
    }
    let (a, q, b, primes) = split_probability(&params.p);
    let num = binomial_cdf_numerator(n, m as u64, &a, &q);
    Rational::from_fraction_hint(num, b.pow(to_u32(n)), primes.as_deref())
}

/// `P(B(n, p) >= r) = 1 - P(B(n, p) <= r - 1)`.
pub fn binomial_tail_geq(params: &BinomialParams, r: i64) -> Rational {
    &Rational::one() - &binomial_cdf_leq(params, r.saturating_sub(1))
}

/// Unreduced `sum_{k=0}^m lambda^k / k!` as `(num, den)` with
/// `den = m! b^m`, plus the primes dividing `den` when known.
pub(crate) fn poisson_partial_sum_fraction(lambda: &Rational, m: u64) -> (BigInt, BigInt, Option<Vec<u64>>) {
    let (a, b) = (lambda.numer(), lambda.denom());
    // 1 + (lambda/1)(1 + (lambda/2)(1 + ... (1 + lambda/m)))
    let mut num = BigInt::one();
    let mut den = BigInt::one();
    for k in (1..=m).rev() {
        let kbd = &den * b * k;
        num = &kbd + a * &num;
        den = kbd;
    }
    let primes = small_prime_factors(b).map(|pb| merge_primes(&primes_up_to(m), &pb));
    (num, den, primes)
}

/// Exact `sum_{k=0}^m lambda^k / k!`.
pub fn poisson_partial_sum(lambda: &Rational, m: u64) -> Rational {
    let (num, den, primes) = poisson_partial_sum_fraction(lambda, m);
    Rational::from_fraction_hint(num, den, primes.as_deref())
}

/// Enclosure of `P(X_lambda <= m) = e^-lambda sum_{k<=m} lambda^k/k!` with
/// relative radius at most `2^-precision_bits`.
pub fn poisson_cdf_leq(params: &PoissonParams, m: u64, precision_bits: u32) -> Result<CertifiedReal> {
    let work = precision_bits + 16;
    let (num, den, _) = poisson_partial_sum_fraction(&params.lambda, m);
    let sum = CertifiedReal::from_fraction(&num, &den, work);
    let decay = exp_enclosure(&(-&params.lambda), work)?;
    Ok(sum.mul(&decay).with_precision_bits(precision_bits))
}

/// `P(Y_p <= m) = 1 - (1-p)^m`; 0 for `m <= 0`.
pub fn geometric_cdf_leq(params: &GeometricParams, m: i64) -> Rational {
    if m <= 0 {
        return Rational::zero();
    }
    let (_, q, b, _) = split_probability(&params.p);
    let e = to_u32(m as u64);
    let den = b.pow(e);
    // gcd(b - a, b) = 1, so b^m - (b-a)^m is already coprime to b^m.
    Rational::from_canonical(&den - q.pow(e), den)
}

/// `C(j-1, r-1) (1-p)^(j-r) p^r` for `j >= r`, else 0.
pub fn pascal_pmf(params: &PascalParams, j: i64) -> Rational {
    let r = params.r;
    if j < r as i64 {
        return Rational::zero();
    }
    let j = j as u64;
    let (a, q, b, primes) = split_probability(&params.p);
    let c = BigInt::from(crate::numerics::binom_coeff(j - 1, r - 1));
    let num = c * q.pow(to_u32(j - r)) * a.pow(to_u32(r));
    Rational::from_fraction_hint(num, b.pow(to_u32(j)), primes.as_deref())
}

/// Coefficients `C(i + r - 1, r - 1)` for `i = 0..=top`.
pub(crate) fn pascal_coefficients(r: u64, top: u64) -> Vec<BigInt> {
    let mut out = Vec::with_capacity(top as usize + 1);
    let mut c = BigInt::one();
    for i in 0..=top {
        out.push(c.clone());
        c = c * (i + r) / (i + 1);
    }
    out
}

/// `P(B*(r, p) <= m) = sum_{j=r}^m pascal_pmf(j)`; 0 for `m < r`.
pub fn pascal_cdf_leq(params: &PascalParams, m: i64) -> Rational {
    let r = params.r;
    if m < r as i64 {
        return Rational::zero();
    }
    let m = m as u64;
    let (a, q, b, primes) = split_probability(&params.p);
    // a^r / b^m * sum_{i=0}^{m-r} C(i+r-1, r-1) q^i b^(m-r-i)
    let coeffs = pascal_coefficients(r, m - r);
    let num = homogeneous_sum(&coeffs, &q, &b) * a.pow(to_u32(r));
    if num.is_zero() {
        return Rational::zero();
    }
    Rational::from_fraction_hint(num, b.pow(to_u32(m)), primes.as_deref())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    fn binom(n: u64, p: Rational) -> BinomialParams {
        BinomialParams::new(n, p).unwrap()
    }

    #[test]
    fn binomial_examples() {
        assert_eq!(binomial_pmf(&binom(2, ratio(1, 2)), 1), ratio(1, 2));
        assert_eq!(binomial_pmf(&binom(3, ratio(1, 3)), 0), ratio(8, 27));
        assert_eq!(binomial_pmf(&binom(5, ratio(0, 1)), 0), ratio(1, 1));
        assert_eq!(binomial_pmf(&binom(5, ratio(0, 1)), 1), ratio(0, 1));
        assert_eq!(binomial_pmf(&binom(5, ratio(1, 2)), 6), ratio(0, 1));
        assert_eq!(binomial_pmf(&binom(5, ratio(1, 2)), -1), ratio(0, 1));

        assert_eq!(binomial_cdf_leq(&binom(2, ratio(1, 2)), 1), ratio(3, 4));
        assert_eq!(binomial_cdf_leq(&binom(7, ratio(2, 9)), 7), ratio(1, 1));
        assert_eq!(binomial_cdf_leq(&binom(3, ratio(2, 3)), 2), ratio(19, 27));
        assert_eq!(binomial_cdf_leq(&binom(3, ratio(2, 3)), -1), ratio(0, 1));
        assert_eq!(binomial_cdf_leq(&binom(4, ratio(1, 1)), 3), ratio(0, 1));

        assert_eq!(binomial_tail_geq(&binom(2, ratio(1, 2)), 0), ratio(1, 1));
        assert_eq!(binomial_tail_geq(&binom(2, ratio(2, 3)), 2), ratio(4, 9));
        assert_eq!(binomial_tail_geq(&binom(3, ratio(1, 2)), 4), ratio(0, 1));
    }

    #[test]
    fn parameter_validation() {
        assert!(BinomialParams::new(3, ratio(3, 2)).is_err());
        assert!(BinomialParams::new(3, ratio(-1, 2)).is_err());
        assert!(PoissonParams::new(ratio(0, 1)).is_err());
        assert!(GeometricParams::new(ratio(0, 1)).is_err());
        assert!(GeometricParams::new(ratio(1, 1)).is_ok());
        assert!(PascalParams::new(0, ratio(1, 2)).is_err());
        assert!(PascalParams::new(2, ratio(5, 4)).is_err());
    }

    #[test]
    fn poisson_partial_sums() {
        assert_eq!(poisson_partial_sum(&ratio(1, 1), 0), ratio(1, 1));
        assert_eq!(poisson_partial_sum(&ratio(1, 1), 1), ratio(2, 1));
        assert_eq!(poisson_partial_sum(&ratio(3, 2), 1), ratio(5, 2));
        assert_eq!(poisson_partial_sum(&ratio(2, 1), 2), ratio(5, 1));
        assert_eq!(poisson_partial_sum(&ratio(3, 1), 2), ratio(17, 2));
    }

    #[test]
    fn poisson_cdf_examples() {
        let p1 = PoissonParams::new(ratio(1, 1)).unwrap();
        let inv_e = poisson_cdf_leq(&p1, 0, 128).unwrap();
        assert_eq!(inv_e.midpoint().to_decimal_string(10), "0.3678794412");
        let two_e = poisson_cdf_leq(&p1, 1, 128).unwrap();
        assert_eq!(two_e.midpoint().to_decimal_string(10), "0.7357588823");
        let p2 = PoissonParams::new(ratio(2, 1)).unwrap();
        let v = poisson_cdf_leq(&p2, 1, 128).unwrap();
        assert_eq!(v.midpoint().to_decimal_string(10), "0.4060058497");
    }

    #[test]
    fn geometric_examples() {
        let g = |p| GeometricParams::new(p).unwrap();
        assert_eq!(geometric_cdf_leq(&g(ratio(1, 1)), 1), ratio(1, 1));
        assert_eq!(geometric_cdf_leq(&g(ratio(1, 2)), 2), ratio(3, 4));
        assert_eq!(geometric_cdf_leq(&g(ratio(1, 3)), 0), ratio(0, 1));
    }

    #[test]
    fn pascal_examples() {
        let pp = |r, p| PascalParams::new(r, p).unwrap();
        assert_eq!(pascal_pmf(&pp(1, ratio(1, 2)), 1), ratio(1, 2));
        assert_eq!(pascal_pmf(&pp(2, ratio(2, 3)), 2), ratio(4, 9));
        assert_eq!(pascal_pmf(&pp(2, ratio(2, 3)), 3), ratio(8, 27));
        assert_eq!(pascal_pmf(&pp(2, ratio(2, 3)), 1), ratio(0, 1));
        assert_eq!(pascal_cdf_leq(&pp(2, ratio(2, 3)), 3), ratio(20, 27));
        assert_eq!(pascal_cdf_leq(&pp(3, ratio(1, 1)), 3), ratio(1, 1));
        assert_eq!(pascal_cdf_leq(&pp(2, ratio(1, 2)), 1), ratio(0, 1));
    }
}
