use crate::error::{domain, Result};
use crate::meantail::{geometric_a, geometric_a_increasing_violation, geometric_f, piece_interval, Family};
use crate::numerics::Rational;
use crate::par::map_ordered;

use super::report::{Counterexample, Outcome, VerificationReport};

/// Pieces sampled by [`verify_geometric`], counted from piece 1.
pub const GEOMETRIC_SAMPLED_PIECES: u64 = 100;
/// Points sampled per piece.
pub const GEOMETRIC_SAMPLES_PER_PIECE: u64 = 16;

/// `a_1 = 1/2`, `a_n` strictly increasing on `[1, n_max]`, and on pieces
/// `1..=min(n_max, 100)` the mean-tail `f` strictly increases along sampled
/// points while staying above the piece infimum.
pub fn verify_geometric(n_max: u64) -> Result<VerificationReport> {
    if n_max < 1 {
        return Err(domain("n_max must be >= 1"));
    }
    let sampled = n_max.min(GEOMETRIC_SAMPLED_PIECES);
    let mut report = VerificationReport::new(
        "geometric_infimum",
        format!("a_n for n in [1, {n_max}]; f sampled on pieces 1..={sampled}"),
    )
    .param("n_max", n_max)
    .param("samples_per_piece", GEOMETRIC_SAMPLES_PER_PIECE);
    let a1 = geometric_a(1)?;
    let half = Rational::new(1, 2);
    report.absorb([Outcome::check(a1 == half, || {
        Counterexample::new("n=1", "a_1 = 1/2").with("a_1", a1.clone())
    })]);
    if let Some(n) = geometric_a_increasing_violation(n_max) {
        report.fail(
            Counterexample::new(format!("n={n}"), "a_n < a_(n+1)")
                .with(format!("a_{n}"), geometric_a(n)?)
                .with(format!("a_{}", n + 1), geometric_a(n + 1)?),
        );
    }
    let outcomes = map_ordered((1..=sampled).collect(), |x| -> Result<Outcome> {
        let interval = piece_interval(Family::Geometric, x)?;
        let floor = geometric_a(x)?;
        let points = interval.samples(GEOMETRIC_SAMPLES_PER_PIECE);
        let values = points.iter().map(geometric_f).collect::<Result<Vec<_>>>()?;
        if let Some(i) = values.iter().position(|v| v <= &floor) {
            return Ok(Outcome::Violated(
                Counterexample::new(format!("p={}", points[i]), format!("f(p) > a_{x}"))
                    .with("f(p)", values[i].clone())
                    .with(format!("a_{x}"), floor),
            ));
        }
        if let Some(i) = (1..values.len()).find(|&i| values[i - 1] >= values[i]) {
            return Ok(Outcome::Violated(
                Counterexample::new(
                    format!("p={} < {}", points[i - 1], points[i]),
                    format!("f strictly increasing on piece {interval}"),
                )
                .with("f(p1)", values[i - 1].clone())
                .with("f(p2)", values[i].clone()),
            ));
        }
        Ok(Outcome::Holds)
    });
    report.absorb(outcomes.into_iter().collect::<Result<Vec<_>>>()?);
    for n in 1..=n_max.min(3) {
        report.critical(format!("a_{n}"), geometric_a(n)?);
    }
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn examples() {
        let r = verify_geometric(1).unwrap();
        assert!(r.passed());
        assert_eq!(r.critical_values[0].1.as_exact().unwrap(), &ratio(1, 2));
        let r = verify_geometric(3).unwrap();
        assert!(r.passed());
        let vals: Vec<_> = r.critical_values.iter().map(|(_, v)| v.as_exact().unwrap().clone()).collect();
        assert_eq!(vals, vec![ratio(1, 2), ratio(5, 9), ratio(37, 64)]);
        assert!(verify_geometric(500).unwrap().passed());
    }
}
