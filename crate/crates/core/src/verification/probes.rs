use crate::error::{domain, Result};
use crate::numerics::{ln_ratio_enclosure, CertifiedReal, Rational, Sign};
use crate::par::map_ordered;

use super::grid::ProbeGrid;
use super::poisson::Precision;
use super::report::{Counterexample, Outcome, VerificationReport};

/// Default band factor: `|h(end)| < 10 / end`.
pub const DEFAULT_BAND_FACTOR: u64 = 10;

/// `3/(3x-1) + 1/(x+1) + ln((x-1)/(x+1))`.
pub fn h2(x: &Rational, precision_bits: u32) -> Result<CertifiedReal> {
    let one = Rational::one();
    let three = Rational::from_integer(3);
    let rational = &(&three / &(&(&three * x) - &one)) + &(x + &one).recip();
    let log = ln_ratio_enclosure(&(x - &one), &(x + &one), precision_bits)?;
    Ok(log.add_rational(&rational))
}

/// `(34x-29)/(17x^2-29x+8) + 1/(x+1) + ln((x-2)/(x+1))`.
pub fn h3(x: &Rational, precision_bits: u32) -> Result<CertifiedReal> {
    let int = |v: i64| Rational::from_integer(v);
    let num = &(&int(34) * x) - &int(29);
    let den = &(&(&int(17) * &(x * x)) - &(&int(29) * x)) + &int(8);
    let rational = &(&num / &den) + &(x + &int(1)).recip();
    let log = ln_ratio_enclosure(&(x - &int(2)), &(x + &int(1)), precision_bits)?;
    Ok(log.add_rational(&rational))
}

/// `3x^2 - 2x + 3`.
pub fn quadratic_factor(x: &Rational) -> Rational {
    let int = |v: i64| Rational::from_integer(v);
    &(&(&int(3) * &(x * x)) - &(&int(2) * x)) + &int(3)
}

/// `17x^4 - 57x^3 + 105x^2 - 91x + 54`.
pub fn quartic_factor(x: &Rational) -> Rational {
    [17i64, -57, 105, -91, 54]
        .iter()
        .fold(Rational::zero(), |acc, &c| &(&acc * x) + &Rational::from_integer(c))
}

type H = fn(&Rational, u32) -> Result<CertifiedReal>;

fn probe_h(name: &str, h: H, min_start: i64, grid: &ProbeGrid, band_factor: u64, precision: Precision) -> Result<VerificationReport> {
    if grid.start() < &Rational::from_integer(min_start) {
        return Err(domain(format!("{name} grid must start at or above {min_start}")));
    }
    let points = grid.points();
    let mut report = VerificationReport::new(format!("{name}_negative_increasing"), grid.to_string())
        .param("grid", grid)
        .param("band", format!("{band_factor}/x"))
        .param("precision_bits", precision.start_bits)
        .param("max_precision_bits", precision.max_bits);
    let bits = precision.start_bits;
    let negative = map_ordered(points.clone(), |x| {
        let sign = precision.sign(|b| h(&x, b));
        Outcome::from_sign(sign, Sign::Negative, || {
            let cx = Counterexample::new(format!("x={x}"), format!("{name}(x) < 0"));
            match h(&x, bits) {
                Ok(v) => cx.with(format!("{name}(x)"), v),
                Err(_) => cx,
            }
        })
    });
    report.absorb(negative);
    let pairs: Vec<(Rational, Rational)> = points.windows(2).map(|w| (w[0].clone(), w[1].clone())).collect();
    let increasing = map_ordered(pairs, |(a, b)| {
        let sign = precision.sign(|p| Ok(h(&b, p)?.sub(&h(&a, p)?)));
        Outcome::from_sign(sign, Sign::Positive, || {
            Counterexample::new(format!("x={a} < {b}"), format!("{name}(x1) < {name}(x2)"))
        })
    });
    report.absorb(increasing);
    let end = grid.end().clone();
    let band = &Rational::from_integer(band_factor) / &end;
    let sign = precision.sign(|p| Ok(h(&end, p)?.abs().neg().add_rational(&band)));
    report.absorb([Outcome::from_sign(sign, Sign::Positive, || {
        Counterexample::new(format!("x={end}"), format!("|{name}(x)| < {band}"))
    })]);
    report.critical(format!("{name}({})", grid.start()), h(grid.start(), bits)?);
    report.critical(format!("{name}({end})"), h(&end, bits)?);
    Ok(report)
}

/// `h_2 < 0` at every grid point, increasing along the grid, and
/// `|h_2(end)| < band_factor / end`.
pub fn probe_h2(grid: &ProbeGrid, band_factor: u64, precision: Precision) -> Result<VerificationReport> {
    probe_h("h2", h2, 3, grid, band_factor, precision)
}

/// `h_3` analogue of [`probe_h2`] on `x >= 4`.
pub fn probe_h3(grid: &ProbeGrid, band_factor: u64, precision: Precision) -> Result<VerificationReport> {
    probe_h("h3", h3, 4, grid, band_factor, precision)
}

/// Extra points where `3x^2 - 2x + 3` is checked outside `[3, oo)`.
fn quadratic_extra_points() -> Vec<Rational> {
    ["-1000", "-10", "-1", "-1/3", "0", "1/3", "1/2", "1", "2"]
        .iter()
        .map(|s| s.parse().expect("literal"))
        .collect()
}

/// `3x^2 - 2x + 3 > 0` on `quadratic_grid` plus sampled points at or
/// below 2 (including 0 and negatives), and the quartic `> 0` on
/// `quartic_grid`. Exact.
pub fn probe_positivity_polynomials(quadratic_grid: &ProbeGrid, quartic_grid: &ProbeGrid) -> Result<VerificationReport> {
    if quadratic_grid.start() < &Rational::from_integer(3) || quartic_grid.start() < &Rational::from_integer(4) {
        return Err(domain("quadratic grid must lie in [3, oo) and quartic grid in [4, oo)"));
    }
    let mut report = VerificationReport::new(
        "positivity_polynomials",
        format!("quadratic: {quadratic_grid} plus points <= 2; quartic: {quartic_grid}"),
    )
    .param("quadratic_grid", quadratic_grid)
    .param("quartic_grid", quartic_grid);
    let mut quad_points = quadratic_extra_points();
    quad_points.extend(quadratic_grid.points());
    for x in &quad_points {
        let v = quadratic_factor(x);
        report.absorb([Outcome::check(v.is_positive(), || {
            Counterexample::new(format!("x={x}"), "3x^2 - 2x + 3 > 0").with("value", v.clone())
        })]);
    }
    for x in &quartic_grid.points() {
        let v = quartic_factor(x);
        report.absorb([Outcome::check(v.is_positive(), || {
            Counterexample::new(format!("x={x}"), "17x^4 - 57x^3 + 105x^2 - 91x + 54 > 0").with("value", v.clone())
        })]);
    }
    report.critical("3x^2-2x+3 at x=0", quadratic_factor(&Rational::zero()));
    report.critical("3x^2-2x+3 at x=1/3", quadratic_factor(&Rational::new(1, 3)));
    report.critical("quartic at x=4", quartic_factor(&Rational::from_integer(4)));
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn h_values() {
        let v = h2(&ratio(3, 1), 128).unwrap();
        assert!((v.to_f64() + 0.0681471805599).abs() < 1e-12);
        let v = h3(&ratio(4, 1), 128).unwrap();
        let oracle = 107.0 / 164.0 + 0.2 + (0.4f64).ln();
        assert!((v.to_f64() - oracle).abs() < 1e-12);
        assert!(v.is_negative());
    }

    #[test]
    fn h2_large_x_matches_series() {
        // h2(x) = -2/(3x^2) + O(1/x^3).
        let x = ratio(1_000_000, 1);
        let v = h2(&x, 192).unwrap().to_f64();
        assert!(v < 0.0 && (v * 1e12 + 2.0 / 3.0).abs() < 1e-5, "{v}");
    }

    #[test]
    fn probes_pass_on_small_grids() {
        let p = Precision::default();
        let g2 = ProbeGrid::logarithmic(ratio(3, 1), ratio(1000, 1), 12).unwrap();
        let g3 = ProbeGrid::logarithmic(ratio(4, 1), ratio(1000, 1), 12).unwrap();
        assert!(probe_h2(&g2, DEFAULT_BAND_FACTOR, p).unwrap().passed());
        assert!(probe_h3(&g3, DEFAULT_BAND_FACTOR, p).unwrap().passed());
        let pair = ProbeGrid::linear(ratio(3, 1), ratio(4, 1), 2).unwrap();
        assert!(probe_h2(&pair, 100, p).unwrap().passed());
        assert!(probe_h2(&g3, DEFAULT_BAND_FACTOR, p).unwrap().passed());
        assert!(probe_h3(&g2, DEFAULT_BAND_FACTOR, p).is_err());
        // A band that is too tight is a counterexample, not a pass.
        assert!(probe_h2(&pair, 0, p).unwrap().counterexample.is_some());
    }

    #[test]
    fn polynomial_values() {
        assert_eq!(quadratic_factor(&ratio(1, 3)), ratio(8, 3));
        assert_eq!(quartic_factor(&ratio(4, 1)), ratio(2074, 1));
        let g = ProbeGrid::linear(ratio(3, 1), ratio(100, 1), 20).unwrap();
        let g4 = ProbeGrid::linear(ratio(4, 1), ratio(100, 1), 20).unwrap();
        assert!(probe_positivity_polynomials(&g, &g4).unwrap().passed());
    }
}
