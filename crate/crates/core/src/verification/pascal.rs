use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use crate::distributions::{binomial_tail_geq, pascal_cdf_leq, pascal_pmf, BinomialParams, PascalParams};
use crate::error::{domain, Result};
use crate::meantail::{
    a2_closed, a3_closed, b2, b3, pascal_a, pascal_claimed_infimum, piece_interval, sweep_pascal_minimum, Family,
};
use crate::numerics::Rational;
use crate::par::map_ordered;

use super::report::{compact, Counterexample, Outcome, VerificationReport};

/// Note attached wherever `a_3(4)` is reported.
pub const A3_4_ERRATUM: &str = "erratum: a_3(4) = 297/625 = 1 - 328/625 exactly; the value 1 - 328/390625 \
     that circulates for it is wrong (390625 = 625^2, a squared denominator)";

/// Steps past `r` that are also compared directly on exact rationals.
const DIRECT_CHECK_SPAN: u64 = 30;

/// One identity sample `(r, p, m)`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct IdentitySample {
    pub r: u64,
    pub p: Rational,
    pub m: u64,
}

/// `count` seeded samples with `1 <= r <= r_max`, `r <= m <= m_max` and
/// `p = a/b`, `1 <= a <= b <= den_max`.
pub fn identity_samples(count: usize, seed: u64, r_max: u64, m_max: u64, den_max: u64) -> Vec<IdentitySample> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    (0..count)
        .map(|_| {
            let r = rng.gen_range(1..=r_max);
            let m = rng.gen_range(r..=m_max.max(r));
            let b = rng.gen_range(1..=den_max);
            let a = rng.gen_range(1..=b);
            IdentitySample { r, p: Rational::new(a, b), m }
        })
        .collect()
}

/// `P(B*(r, p) <= m) = P(B(m, p) >= r)` exactly for every sample.
pub fn verify_pascal_identity(samples: &[IdentitySample]) -> Result<VerificationReport> {
    let mut checked = Vec::with_capacity(samples.len());
    for s in samples {
        if s.m < s.r {
            return Err(domain(format!("sample needs m >= r, got r={} m={}", s.r, s.m)));
        }
        checked.push((PascalParams::new(s.r, s.p.clone())?, BinomialParams::new(s.m, s.p.clone())?));
    }
    let mut report = VerificationReport::new("pascal_binomial_identity", format!("{} samples", samples.len()))
        .param("samples", samples.len());
    let evaluated = map_ordered(checked, |(pascal, binom)| {
        let lhs = pascal_cdf_leq(&pascal, binom.n() as i64);
        let rhs = binomial_tail_geq(&binom, pascal.r() as i64);
        (pascal, binom, lhs, rhs)
    });
    let outcomes = evaluated.iter().map(|(pascal, binom, lhs, rhs)| {
        Outcome::check(lhs == rhs, || {
            Counterexample::new(
                format!("r={}, p={}, m={}", pascal.r(), pascal.p(), binom.n()),
                "P(B*(r,p) <= m) = P(B(m,p) >= r)",
            )
            .with("pascal cdf", lhs.clone())
            .with("binomial tail", rhs.clone())
        })
    });
    report.absorb(outcomes.collect::<Vec<_>>());
    for (pascal, binom, lhs, _) in evaluated.iter().take(3) {
        report.critical(format!("r={}, p={}, m={}", pascal.r(), pascal.p(), binom.n()), compact(lhs.clone()));
    }
    Ok(report)
}

/// For each `r` in `rs`: `a_r(r) = (r/(r+1))^r` and `a_r(n) > a_r(r)` for
/// all `r < n <= n_max`. One shared sweep serves every `r`.
pub fn verify_pascal_conjecture_many(rs: &[u64], n_max: u64) -> Result<Vec<VerificationReport>> {
    if rs.is_empty() {
        return Err(domain("no r given"));
    }
    if let Some(&r) = rs.iter().find(|&&r| r == 0 || r > n_max) {
        return Err(domain(format!("need 1 <= r <= n_max = {n_max}, got r = {r}")));
    }
    let sweeps = sweep_pascal_minimum(rs, n_max);
    rs.iter()
        .zip(sweeps)
        .map(|(&r, sweep)| {
            let mut report = VerificationReport::new(
                format!("pascal_minimum_r{r}"),
                format!("n in ({r}, {n_max}]"),
            )
            .param("r", r)
            .param("n_max", n_max);
            let first = pascal_a(r, r)?;
            let claimed = pascal_claimed_infimum(r)?;
            report.absorb([Outcome::check(first == claimed, || {
                Counterexample::new(format!("n={r}"), format!("a_{r}({r}) = ({r}/{})^{r}", r + 1))
                    .with(format!("a_{r}({r})"), first.clone())
                    .with("claim", claimed.clone())
            })]);
            // Direct rational comparisons on the first steps, independent of the sweep.
            let direct_hi = n_max.min(r + DIRECT_CHECK_SPAN);
            for n in r + 1..=direct_hi {
                let a = pascal_a(r, n)?;
                report.absorb([Outcome::check(a > first, || {
                    Counterexample::new(format!("n={n}"), format!("a_{r}(n) > a_{r}({r})"))
                        .with(format!("a_{r}({n})"), a.clone())
                        .with(format!("a_{r}({r})"), first.clone())
                })]);
            }
            if let Some(n) = sweep.first_violation {
                report.fail(
                    Counterexample::new(format!("n={n}"), format!("a_{r}(n) > a_{r}({r})"))
                        .with(format!("a_{r}({n})"), pascal_a(r, n)?)
                        .with(format!("a_{r}({r})"), first.clone()),
                );
            }
            report.note(format!(
                "{} values of n compared exactly; n <= {direct_hi} also compared as reduced rationals",
                sweep.checked
            ));
            report.critical(format!("a_{r}({r})"), first);
            if r + 1 <= n_max {
                report.critical(format!("a_{r}({})", r + 1), pascal_a(r, r + 1)?);
            }
            if r == 3 && n_max >= 4 {
                report.note(A3_4_ERRATUM);
            }
            Ok(report)
        })
        .collect()
}

/// [`verify_pascal_conjecture_many`] for a single `r`.
pub fn verify_pascal_conjecture(r: u64, n_max: u64) -> Result<VerificationReport> {
    Ok(verify_pascal_conjecture_many(&[r], n_max)?.remove(0))
}

/// Closed forms of `a_2` and `a_3` equal the term-by-term sum on
/// `[2, n_max]` and `[3, n_max]`.
pub fn verify_closed_forms(n_max: u64) -> Result<VerificationReport> {
    if n_max < 4 {
        return Err(domain(format!("n_max must be >= 4, got {n_max}")));
    }
    let mut report = VerificationReport::new(
        "pascal_closed_forms",
        format!("a_2: n in [2, {n_max}]; a_3: n in [3, {n_max}]"),
    )
    .param("n_max", n_max);
    let cells: Vec<(u64, u64)> = (2..=n_max).map(|n| (2, n)).chain((3..=n_max).map(|n| (3, n))).collect();
    let outcomes = map_ordered(cells, |(r, n)| -> Result<Outcome> {
        let closed = if r == 2 { a2_closed(n)? } else { a3_closed(n)? };
        let sum = pascal_a(r, n)?;
        Ok(Outcome::check(closed == sum, || {
            Counterexample::new(format!("r={r}, n={n}"), format!("closed form of a_{r}(n) = term-by-term sum"))
                .with("closed form", closed.clone())
                .with("sum", sum.clone())
        }))
    });
    report.absorb(outcomes.into_iter().collect::<Result<Vec<_>>>()?);
    let five_ninths = Rational::new(5, 9);
    let a2_3 = a2_closed(3)?;
    report.absorb([Outcome::check(a2_3 < five_ninths, || {
        Counterexample::new("n=3", "a_2(3) < 5/9").with("a_2(3)", a2_3.clone())
    })]);
    report.critical("a_2(2)", a2_closed(2)?);
    report.critical("b_2(3)", b2(3)?);
    report.critical("a_2(3)", a2_3);
    report.critical("a_3(3)", a3_closed(3)?);
    report.critical("a_3(4)", a3_closed(4)?);
    report.note(A3_4_ERRATUM);
    Ok(report)
}

/// `b_2` strictly decreasing on `[3, n_max]` with `b_2(3) = 1/2 < 5/9`;
/// `b_3` strictly decreasing on `[4, n_max]` with `b_3(4) = 328/625`.
pub fn probe_b_sequences(n_max: u64) -> Result<VerificationReport> {
    if n_max < 5 {
        return Err(domain(format!("n_max must be >= 5, got {n_max}")));
    }
    let mut report = VerificationReport::new("b_sequences_decreasing", format!("b_2: [3, {n_max}]; b_3: [4, {n_max}]"))
        .param("n_max", n_max);
    let b2s = map_ordered((3..=n_max).collect(), b2).into_iter().collect::<Result<Vec<_>>>()?;
    let b3s = map_ordered((4..=n_max).collect(), b3).into_iter().collect::<Result<Vec<_>>>()?;
    for (name, start, values) in [("b_2", 3u64, &b2s), ("b_3", 4, &b3s)] {
        if let Some(i) = (1..values.len()).find(|&i| values[i - 1] <= values[i]) {
            let n = start + i as u64;
            report.fail(
                Counterexample::new(format!("n={}", n - 1), format!("{name}(n) > {name}(n+1)"))
                    .with(format!("{name}({})", n - 1), values[i - 1].clone())
                    .with(format!("{name}({n})"), values[i].clone()),
            );
        }
    }
    let checks = [
        (b2s[0] == Rational::new(1, 2), "b_2(3) = 1/2", b2s[0].clone()),
        (b2s[0] < Rational::new(5, 9), "b_2(3) < 5/9", b2s[0].clone()),
        (b3s[0] == Rational::new(328, 625), "b_3(4) = 328/625", b3s[0].clone()),
    ];
    for (ok, relation, value) in checks {
        report.absorb([Outcome::check(ok, || Counterexample::new("", relation).with("value", value))]);
    }
    report.critical("b_2(3)", b2s[0].clone());
    report.critical("b_2(4)", b2s[1].clone());
    report.critical("b_3(4)", b3s[0].clone());
    report.critical("b_3(5)", b3s[1].clone());
    report.note(A3_4_ERRATUM);
    Ok(report)
}

/// For each `k` in `[r, n]`, `g_k(p) = C(k-1, r-1) p^r (1-p)^(k-r)` strictly
/// increases along `sample_count` points of `(r/(n+1), r/n]`, and
/// `r/k - p > 0` at the interior points.
pub fn probe_gk_monotone(r: u64, n: u64, sample_count: u64) -> Result<VerificationReport> {
    if sample_count < 2 {
        return Err(domain("sample_count must be >= 2"));
    }
    if r == 0 {
        return Err(domain("Pascal r must be >= 1"));
    }
    let interval = piece_interval(Family::Pascal { r }, n)?;
    let points = interval.samples(sample_count);
    let mut report = VerificationReport::new(
        format!("g_k_increasing_r{r}_n{n}"),
        format!("k in [{r}, {n}], {sample_count} points of {interval}"),
    )
    .param("r", r)
    .param("n", n)
    .param("sample_count", sample_count);
    for k in r..=n {
        let values = points
            .iter()
            .map(|p| Ok(pascal_pmf(&PascalParams::new(r, p.clone())?, k as i64)))
            .collect::<Result<Vec<_>>>()?;
        if let Some(i) = (1..values.len()).find(|&i| values[i - 1] >= values[i]) {
            report.fail(
                Counterexample::new(format!("k={k}, p={} < {}", points[i - 1], points[i]), "g_k(p1) < g_k(p2)")
                    .with("g_k(p1)", values[i - 1].clone())
                    .with("g_k(p2)", values[i].clone()),
            );
        }
        let r_over_k = Rational::new(r, k);
        for p in points.iter().filter(|p| **p != interval.hi) {
            let factor = &r_over_k - p;
            report.absorb([Outcome::check(factor.is_positive(), || {
                Counterexample::new(format!("k={k}, p={p}"), "r/k - p > 0").with("r/k - p", factor.clone())
            })]);
        }
    }
    if let Some(p) = points.first() {
        report.critical(format!("g_{r}({p})"), pascal_pmf(&PascalParams::new(r, p.clone())?, r as i64));
    }
    Ok(report)
}
