use crate::distributions::{binomial_tail_geq, poisson_cdf_leq, BinomialParams, PoissonParams};
use crate::error::{domain, Result};
use crate::meantail::{poisson_mean_tail, poisson_piece_infimum};
use crate::numerics::{decide_sign_from, exp_enclosure, CertifiedReal, Rational, Sign};
use crate::par::map_ordered;

use super::report::{compact, Counterexample, Outcome, VerificationReport};

/// Precision window for adaptive sign decisions.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct Precision {
    pub start_bits: u32,
    pub max_bits: u32,
}

impl Precision {
    pub fn new(start_bits: u32, max_bits: u32) -> Result<Self> {
        if start_bits < 8 || start_bits > max_bits {
            return Err(domain(format!("need 8 <= precision ({start_bits}) <= max precision ({max_bits})")));
        }
        Ok(Self { start_bits, max_bits })
    }

    pub(crate) fn sign<F>(self, f: F) -> Sign
    where
        F: Fn(u32) -> Result<CertifiedReal>,
    {
        decide_sign_from(self.start_bits, self.max_bits, f)
    }
}

impl Default for Precision {
    fn default() -> Self {
        Self { start_bits: 192, max_bits: 4096 }
    }
}

/// `P(X_{k+1} <= k) < P(X_{k+2} <= k+1)` for every `k < k_max`.
pub fn verify_poisson_increasing(k_max: u64, precision: Precision) -> Result<VerificationReport> {
    if k_max < 1 {
        return Err(domain("k_max must be >= 1"));
    }
    let mut report = VerificationReport::new("poisson_piece_infima_increasing", format!("k in [0, {k_max}]"))
        .param("k_max", k_max)
        .param("precision_bits", precision.start_bits)
        .param("max_precision_bits", precision.max_bits);
    let bits = precision.start_bits;
    let outcomes = map_ordered((0..k_max).collect(), |k| {
        let sign = precision.sign(|b| Ok(poisson_piece_infimum(k + 1, b)?.sub(&poisson_piece_infimum(k, b)?)));
        Outcome::from_sign(sign, Sign::Positive, || {
            let mut cx = Counterexample::new(format!("k={k}"), "P(X_(k+1) <= k) < P(X_(k+2) <= k+1)");
            for j in [k, k + 1] {
                if let Ok(v) = poisson_piece_infimum(j, bits) {
                    cx = cx.with(format!("P(X_{} <= {j})", j + 1), v);
                }
            }
            cx
        })
    });
    report.absorb(outcomes);
    for k in [0, 1, 2, k_max] {
        report.critical(format!("P(X_{} <= {k})", k + 1), poisson_piece_infimum(k, bits)?);
    }
    report.critical("1/e", exp_enclosure(&Rational::from_integer(-1), bits)?);
    Ok(report)
}

/// `|P(X_lambda <= lambda) - 1/2|` strictly decreases along `lambdas` and
/// ends below `tolerance`.
pub fn verify_poisson_clt(lambdas: &[Rational], tolerance: &Rational, precision: Precision) -> Result<VerificationReport> {
    if lambdas.is_empty() || lambdas.windows(2).any(|w| w[0] >= w[1]) {
        return Err(domain("lambdas must be non-empty and strictly increasing"));
    }
    if !tolerance.is_positive() {
        return Err(domain("tolerance must be positive"));
    }
    let list = lambdas.iter().map(|l| l.to_string()).collect::<Vec<_>>().join(", ");
    let mut report = VerificationReport::new("poisson_mean_tail_limit_half", format!("lambda in ({list})"))
        .param("lambdas", &list)
        .param("tolerance", tolerance)
        .param("precision_bits", precision.start_bits)
        .param("max_precision_bits", precision.max_bits);
    let half = Rational::new(1, 2);
    let gap = |lambda: &Rational, b: u32| -> Result<CertifiedReal> {
        Ok(poisson_mean_tail(lambda, b)?.add_rational(&-&half).abs())
    };
    let bits = precision.start_bits;
    let values = map_ordered(lambdas.to_vec(), |l| poisson_mean_tail(&l, bits))
        .into_iter()
        .collect::<Result<Vec<_>>>()?;
    let pairs: Vec<(Rational, Rational)> = lambdas.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let outcomes = map_ordered(pairs, |(a, b)| {
        let sign = precision.sign(|p| Ok(gap(&a, p)?.sub(&gap(&b, p)?)));
        Outcome::from_sign(sign, Sign::Positive, || {
            let mut cx = Counterexample::new(
                format!("lambda={a} -> {b}"),
                "|P(X_l <= l) - 1/2| strictly decreasing in l",
            );
            for l in [&a, &b] {
                if let Ok(v) = gap(l, bits) {
                    cx = cx.with(format!("gap at {l}"), v);
                }
            }
            cx
        })
    });
    report.absorb(outcomes);
    let last = lambdas.last().unwrap();
    let sign = precision.sign(|p| Ok(gap(last, p)?.neg().add_rational(tolerance)));
    report.absorb([Outcome::from_sign(sign, Sign::Positive, || {
        Counterexample::new(format!("lambda={last}"), format!("|P(X_l <= l) - 1/2| < {tolerance}"))
            .with("gap", gap(last, bits).unwrap_or_else(|_| CertifiedReal::zero(bits)))
    })]);
    for (l, v) in lambdas.iter().zip(values) {
        report.critical(format!("P(X <= {l}) at lambda={l}"), v);
    }
    Ok(report)
}

/// `P(X_l1 <= x) > P(X_l2 <= x)` for every pair `l1 < l2`.
pub fn verify_poisson_lambda_monotone(
    x: u64,
    pairs: &[(Rational, Rational)],
    precision: Precision,
) -> Result<VerificationReport> {
    let mut params = Vec::with_capacity(pairs.len());
    for (a, b) in pairs {
        if a >= b {
            return Err(domain(format!("pair ({a}, {b}) is not increasing")));
        }
        params.push((PoissonParams::new(a.clone())?, PoissonParams::new(b.clone())?));
    }
    let list = pairs.iter().map(|(a, b)| format!("({a}, {b})")).collect::<Vec<_>>().join(" ");
    let mut report = VerificationReport::new(format!("poisson_cdf_decreasing_in_lambda_x{x}"), format!("x={x}, pairs {list}"))
        .param("x", x)
        .param("pairs", &list)
        .param("precision_bits", precision.start_bits);
    let bits = precision.start_bits;
    let outcomes = map_ordered(params.clone(), |(a, b)| {
        let sign = precision.sign(|p| Ok(poisson_cdf_leq(&a, x, p)?.sub(&poisson_cdf_leq(&b, x, p)?)));
        Outcome::from_sign(sign, Sign::Positive, || {
            let mut cx = Counterexample::new(
                format!("x={x}, lambda=({}, {})", a.lambda(), b.lambda()),
                "P(X_l1 <= x) > P(X_l2 <= x)",
            );
            for q in [&a, &b] {
                if let Ok(v) = poisson_cdf_leq(q, x, bits) {
                    cx = cx.with(format!("P(X_{} <= {x})", q.lambda()), v);
                }
            }
            cx
        })
    });
    report.absorb(outcomes);
    if let Some((a, b)) = params.first() {
        report.critical(format!("P(X_{} <= {x})", a.lambda()), poisson_cdf_leq(a, x, bits)?);
        report.critical(format!("P(X_{} <= {x})", b.lambda()), poisson_cdf_leq(b, x, bits)?);
    }
    Ok(report)
}

/// `|P(B(n, (k+1)/n) >= k+1) - P(X_{k+1} >= k+1)|` strictly decreases
/// along `n_list`.
pub fn verify_binomial_poisson_limit(k: u64, n_list: &[u64], precision: Precision) -> Result<VerificationReport> {
    if n_list.iter().any(|&n| n <= k + 1) {
        return Err(domain(format!("every n must exceed k + 1 = {}", k + 1)));
    }
    let list = n_list.iter().map(u64::to_string).collect::<Vec<_>>().join(", ");
    let mut report = VerificationReport::new(format!("binomial_poisson_limit_k{k}"), format!("k={k}, n in ({list})"))
        .param("k", k)
        .param("n_list", &list)
        .param("precision_bits", precision.start_bits);
    let tails = n_list
        .iter()
        .map(|&n| Ok(binomial_tail_geq(&BinomialParams::new(n, Rational::new(k + 1, n))?, (k + 1) as i64)))
        .collect::<Result<Vec<_>>>()?;
    let limit = |b: u32| -> Result<CertifiedReal> { Ok(poisson_piece_infimum(k, b)?.neg().add_rational(&Rational::one())) };
    let gap = |tail: &Rational, b: u32| -> Result<CertifiedReal> { Ok(limit(b)?.neg().add_rational(tail).abs()) };
    let bits = precision.start_bits;
    let pairs: Vec<usize> = (1..tails.len()).collect();
    let outcomes = map_ordered(pairs, |i| {
        let sign = precision.sign(|p| Ok(gap(&tails[i - 1], p)?.sub(&gap(&tails[i], p)?)));
        Outcome::from_sign(sign, Sign::Positive, || {
            let mut cx = Counterexample::new(
                format!("k={k}, n={} -> {}", n_list[i - 1], n_list[i]),
                "binomial-to-Poisson gap strictly decreasing",
            );
            for j in [i - 1, i] {
                if let Ok(v) = gap(&tails[j], bits) {
                    cx = cx.with(format!("gap at n={}", n_list[j]), v);
                }
            }
            cx
        })
    });
    report.absorb(outcomes);
    report.critical(format!("P(X_{} >= {})", k + 1, k + 1), limit(bits)?);
    for (n, tail) in n_list.iter().zip(&tails) {
        let label = format!("P(B({n}, {}/{n}) >= {})", k + 1, k + 1);
        report.critical(label, compact(tail.clone()));
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn increasing_examples() {
        let r = verify_poisson_increasing(2, Precision::default()).unwrap();
        assert!(r.passed());
        let v = r.critical_values[1].1.to_f64();
        assert!((v - 0.4060058497).abs() < 1e-9);
    }

    #[test]
    fn clt_examples() {
        let p = Precision::new(128, 4096).unwrap();
        let r = verify_poisson_clt(&[ratio(1, 1), ratio(10, 1), ratio(100, 1)], &ratio(1, 10), p).unwrap();
        assert!(r.passed(), "{r:?}");
        let at100 = r.critical_values[2].1.to_f64();
        assert!((at100 - 0.5266).abs() < 1e-4, "{at100}");
        let strict = verify_poisson_clt(&[ratio(1, 1), ratio(10, 1)], &ratio(1, 1000), p).unwrap();
        assert!(strict.counterexample.is_some());
        assert!(verify_poisson_clt(&[ratio(2, 1), ratio(1, 1)], &ratio(1, 10), p).is_err());
    }

    #[test]
    fn lambda_monotone_examples() {
        let p = Precision::default();
        let pairs = [(ratio(1, 2), ratio(1, 1))];
        assert!(verify_poisson_lambda_monotone(0, &pairs, p).unwrap().passed());
        assert!(verify_poisson_lambda_monotone(1, &[(ratio(1, 1), ratio(2, 1))], p).unwrap().passed());
        assert!(verify_poisson_lambda_monotone(3, &[(ratio(2, 1), ratio(3, 1))], p).unwrap().passed());
        assert!(verify_poisson_lambda_monotone(1, &[(ratio(2, 1), ratio(1, 1))], p).is_err());
    }

    #[test]
    fn limit_examples() {
        let p = Precision::default();
        for k in 0..=2 {
            assert!(verify_binomial_poisson_limit(k, &[10, 100], p).unwrap().passed());
        }
        assert!(verify_binomial_poisson_limit(2, &[3], p).is_err());
    }
}
