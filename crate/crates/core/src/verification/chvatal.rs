use crate::error::{domain, Result};
use crate::meantail::{chvatal_argmin, nearest_to_two_thirds};
use crate::numerics::Rational;
use crate::par::map_ordered;

use super::report::{compact, Counterexample, Outcome, VerificationReport};

/// For every `n` in `[2, n_max]`, the exact minimizers of `q_m` are exactly
/// the single integer nearest to `2n/3`. A tie in either set fails.
pub fn verify_chvatal(n_max: u64) -> Result<VerificationReport> {
    if n_max < 2 {
        return Err(domain(format!("n_max must be >= 2, got {n_max}")));
    }
    let mut report = VerificationReport::new("chvatal_minimizer", format!("n in [2, {n_max}], m in [0, n]"))
        .param("n_max", n_max);
    let outcomes = map_ordered((2..=n_max).collect(), |n| -> Result<Outcome> {
        let profile = chvatal_argmin(n)?;
        let nearest = nearest_to_two_thirds(n);
        let ok = nearest.len() == 1 && profile.minimizers == nearest;
        Ok(Outcome::check(ok, || {
            let mut cx = Counterexample::new(
                format!("n={n}"),
                format!("argmin q_m = {{nearest integer to 2n/3}} = {nearest:?}, unique"),
            );
            for &m in &profile.minimizers {
                cx = cx.with(format!("q_{m} (minimizer)"), profile.q_values[m as usize].clone());
            }
            for &m in &nearest {
                cx = cx.with(format!("q_{m} (nearest to 2n/3)"), profile.q_values[m as usize].clone());
            }
            cx
        }))
    });
    report.absorb(outcomes.into_iter().collect::<Result<Vec<_>>>()?);
    for n in [2, n_max] {
        let profile = chvatal_argmin(n)?;
        let m = profile.minimizers[0];
        report.critical(format!("min q_m at n={n} (m={m})"), compact(profile.minimum().clone()));
    }
    report.critical("2*n_max/3", Rational::new(2 * n_max, 3u64));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn small_ranges_pass() {
        let r = verify_chvatal(2).unwrap();
        assert!(r.passed());
        assert_eq!(r.critical_values[0].1.as_exact().unwrap(), &ratio(3, 4));
        assert!(verify_chvatal(60).unwrap().passed());
        assert!(verify_chvatal(1).is_err());
    }
}
