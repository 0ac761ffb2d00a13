use std::fmt;

use crate::error::{domain, Result};
use crate::numerics::Rational;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Spacing {
    Linear,
    /// Geometric spacing; interior points are rounded to 6 significant
    /// digits and then used exactly.
    Logarithmic,
}

/// Finite set of probe points on `[start, end]`, endpoints included.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ProbeGrid {
    start: Rational,
    end: Rational,
    spacing: Spacing,
    count: usize,
}

impl ProbeGrid {
    pub fn new(start: Rational, end: Rational, spacing: Spacing, count: usize) -> Result<Self> {
        if start >= end {
            return Err(domain(format!("grid start {start} must be below end {end}")));
        }
        if count < 2 {
            return Err(domain(format!("grid needs at least 2 points, got {count}")));
        }
        if spacing == Spacing::Logarithmic && !start.is_positive() {
            return Err(domain("logarithmic grid needs a positive start"));
        }
        Ok(Self { start, end, spacing, count })
    }

    pub fn linear(start: impl Into<Rational>, end: impl Into<Rational>, count: usize) -> Result<Self> {
        Self::new(start.into(), end.into(), Spacing::Linear, count)
    }

    pub fn logarithmic(start: impl Into<Rational>, end: impl Into<Rational>, count: usize) -> Result<Self> {
        Self::new(start.into(), end.into(), Spacing::Logarithmic, count)
    }

    pub fn start(&self) -> &Rational {
        &self.start
    }

    pub fn end(&self) -> &Rational {
        &self.end
    }

    pub fn spacing(&self) -> Spacing {
        self.spacing
    }

    pub fn count(&self) -> usize {
        self.count
    }

    /// Strictly increasing points. Logarithmic rounding can merge
    /// neighbours on very narrow grids, so fewer than `count` may result.
    pub fn points(&self) -> Vec<Rational> {
        let last = self.count - 1;
        let mut pts = Vec::with_capacity(self.count);
        pts.push(self.start.clone());
        match self.spacing {
            Spacing::Linear => {
                let step = &(&self.end - &self.start) / &Rational::from_integer(last as u64);
                for i in 1..last {
                    pts.push(&self.start + &(&step * &Rational::from_integer(i as u64)));
                }
            }
            Spacing::Logarithmic => {
                let (a, b) = (self.start.to_f64().ln(), self.end.to_f64().ln());
                for i in 1..last {
                    let x = (a + (b - a) * i as f64 / last as f64).exp();
                    let q: Rational = format!("{x:.5e}").parse().expect("formatted float parses");
                    if &q > pts.last().unwrap() && q < self.end {
                        pts.push(q);
                    }
                }
            }
        }
        pts.push(self.end.clone());
        pts
    }
}

impl fmt::Display for ProbeGrid {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let kind = match self.spacing {
            Spacing::Linear => "linear",
            Spacing::Logarithmic => "log",
        };
        write!(f, "{kind} grid [{}, {}] with {} points", self.start, self.end, self.count)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::numerics::ratio;

    #[test]
    fn linear_points() {
        let g = ProbeGrid::linear(ratio(3, 1), ratio(4, 1), 3).unwrap();
        assert_eq!(g.points(), vec![ratio(3, 1), ratio(7, 2), ratio(4, 1)]);
    }

    #[test]
    fn log_points_are_exact_at_ends_and_increasing() {
        let g = ProbeGrid::logarithmic(ratio(3, 1), ratio(1_000_000, 1), 64).unwrap();
        let p = g.points();
        assert_eq!(p.len(), 64);
        assert_eq!(p[0], ratio(3, 1));
        assert_eq!(p[63], ratio(1_000_000, 1));
        assert!(p.windows(2).all(|w| w[0] < w[1]));
        // Six significant digits.
        assert_eq!(p[1].to_fraction_string(), "367101/100000");
    }

    #[test]
    fn rejects_bad_grids() {
        assert!(ProbeGrid::linear(ratio(4, 1), ratio(3, 1), 4).is_err());
        assert!(ProbeGrid::linear(ratio(3, 1), ratio(4, 1), 1).is_err());
        assert!(ProbeGrid::logarithmic(ratio(0, 1), ratio(4, 1), 4).is_err());
    }
}
