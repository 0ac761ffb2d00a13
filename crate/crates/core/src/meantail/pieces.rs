//! Floor-breakpoint pieces of each mean-tail function and the global
//! infimum assembled from them.

use std::fmt;

use crate::error::{domain, Error, Result};
use crate::numerics::{decide_sign_from, exp_enclosure, CertifiedReal, Rational, Sign};
use crate::par::map_ordered;

use super::geometric::{geometric_a, geometric_f};
use super::pascal::{pascal_a_via_binomial, pascal_claimed_infimum, pascal_f};
use super::poisson::{poisson_mean_tail, poisson_piece_infimum};

/// Mean-tail families with a floor-breakpoint piece structure.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Family {
    Poisson,
    Geometric,
    Pascal { r: u64 },
}

impl Family {
    /// Smallest piece index.
    pub fn first_piece(self) -> u64 {
        match self {
            Family::Poisson => 0,
            Family::Geometric => 1,
            Family::Pascal { r } => r,
        }
    }

    pub fn name(self) -> String {
        match self {
            Family::Poisson => "poisson".into(),
            Family::Geometric => "geometric".into(),
            Family::Pascal { r } => format!("pascal r={r}"),
        }
    }
}

impl fmt::Display for Family {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

/// Either an exact rational or a certified enclosure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Value {
    Exact(Rational),
    Certified(CertifiedReal),
}

impl Value {
    pub fn as_exact(&self) -> Option<&Rational> {
        match self {
            Value::Exact(q) => Some(q),
            Value::Certified(_) => None,
        }
    }

    pub fn to_certified(&self, precision_bits: u32) -> CertifiedReal {
        match self {
            Value::Exact(q) => CertifiedReal::from_rational(q, precision_bits),
            Value::Certified(c) => c.clone(),
        }
    }

    pub fn to_f64(&self) -> f64 {
        match self {
            Value::Exact(q) => q.to_f64(),
            Value::Certified(c) => c.to_f64(),
        }
    }
}

impl From<Rational> for Value {
    fn from(q: Rational) -> Self {
        Value::Exact(q)
    }
}

impl From<CertifiedReal> for Value {
    fn from(c: CertifiedReal) -> Self {
        Value::Certified(c)
    }
}

/// Parameter interval with explicit endpoint closure.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ParamInterval {
    pub lo: Rational,
    pub hi: Rational,
    pub lo_closed: bool,
    pub hi_closed: bool,
}

impl ParamInterval {
    pub fn contains(&self, x: &Rational) -> bool {
        let above = if self.lo_closed { x >= &self.lo } else { x > &self.lo };
        let below = if self.hi_closed { x <= &self.hi } else { x < &self.hi };
        above && below
    }

    /// `count` evenly spaced points strictly inside or on the closed ends:
    /// `lo + i (hi - lo) / (count + 1)` for `i = 1..=count`, with the last
    /// point moved onto `hi` when `hi` is closed.
    pub fn samples(&self, count: u64) -> Vec<Rational> {
        let width = &self.hi - &self.lo;
        let steps = if self.hi_closed { count } else { count + 1 };
        (1..=count)
            .map(|i| &self.lo + &(&width * &Rational::new(i, steps)))
            .collect()
    }
}

impl fmt::Display for ParamInterval {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{}{}, {}{}",
            if self.lo_closed { '[' } else { '(' },
            self.lo,
            self.hi,
            if self.hi_closed { ']' } else { ')' }
        )
    }
}

/// Side from which the parameter approaches the piece's open endpoint.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Approach {
    FromAbove,
    FromBelow,
}

/// One floor-piece of a mean-tail function.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PieceReport {
    pub family: Family,
    /// Value of `floor(1/p)`, `floor(lambda)` or `floor(r/p)` on the piece.
    pub piece_index: u64,
    pub interval: ParamInterval,
    pub piece_infimum: Value,
    /// Always false: each piece infimum is a one-sided limit at an open end.
    pub attained: bool,
    /// Open endpoint at which the infimum is approached.
    pub limit_witness: Rational,
    pub approach: Approach,
}

/// Interval of piece `index`.
///
/// Geometric and Pascal pieces are `(1/(x+1), 1/x]` and `(r/(n+1), r/n]`.
/// Poisson pieces are `[k, k+1)` (`(0, 1)` for `k = 0`), the set on which
/// `floor(lambda) = k`.
pub fn piece_interval(family: Family, index: u64) -> Result<ParamInterval> {
    if index < family.first_piece() {
        return Err(domain(format!("{family} pieces start at {}, got {index}", family.first_piece())));
    }
    Ok(match family {
        Family::Geometric => ParamInterval {
            lo: Rational::new(1, index + 1),
            hi: Rational::new(1, index),
            lo_closed: false,
            hi_closed: true,
        },
        Family::Pascal { r } => ParamInterval {
            lo: Rational::new(r, index + 1),
            hi: Rational::new(r, index),
            lo_closed: false,
            hi_closed: true,
        },
        Family::Poisson => ParamInterval {
            lo: Rational::from_integer(index),
            hi: Rational::from_integer(index + 1),
            lo_closed: index > 0,
            hi_closed: false,
        },
    })
}

/// The mean-tail function `P(X <= E[X])` of `family` at `param`.
pub fn mean_tail(family: Family, param: &Rational, precision_bits: u32) -> Result<Value> {
    Ok(match family {
        Family::Geometric => Value::Exact(geometric_f(param)?),
        Family::Pascal { r } => Value::Exact(pascal_f(r, param)?),
        Family::Poisson => Value::Certified(poisson_mean_tail(param, precision_bits)?),
    })
}

/// Floor quantity selecting the piece that contains `param`.
pub fn piece_index_of(family: Family, param: &Rational) -> Result<u64> {
    let q = match family {
        Family::Geometric => param.recip(),
        Family::Pascal { r } => &Rational::from_integer(r) / param,
        Family::Poisson => param.clone(),
    };
    u64::try_from(q.floor()).map_err(|_| domain(format!("parameter {param} outside the family domain")))
}

fn piece_infimum(family: Family, index: u64, precision_bits: u32) -> Result<Value> {
    Ok(match family {
        Family::Geometric => Value::Exact(geometric_a(index)?),
        // Same value as the term-by-term sum, with r terms instead of n - r + 1.
        Family::Pascal { r } => Value::Exact(pascal_a_via_binomial(r, index)?),
        Family::Poisson => Value::Certified(poisson_piece_infimum(index, precision_bits)?),
    })
}

/// One report per piece index in `first..=last`, in index order.
pub fn piece_decompose(family: Family, first: u64, last: u64, precision_bits: u32) -> Result<Vec<PieceReport>> {
    if first < family.first_piece() {
        return Err(domain(format!("{family} pieces start at {}, got {first}", family.first_piece())));
    }
    if let Family::Pascal { r: 0 } = family {
        return Err(domain("Pascal r must be >= 1"));
    }
    let indices: Vec<u64> = (first..=last).collect();
    map_ordered(indices, |index| {
        let interval = piece_interval(family, index)?;
        let (limit_witness, approach) = match family {
            Family::Poisson => (interval.hi.clone(), Approach::FromBelow),
            _ => (interval.lo.clone(), Approach::FromAbove),
        };
        Ok(PieceReport {
            family,
            piece_index: index,
            piece_infimum: piece_infimum(family, index, precision_bits)?,
            interval,
            attained: false,
            limit_witness,
            approach,
        })
    })
    .into_iter()
    .collect()
}

/// Value a global infimum is compared against.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Claim {
    /// `1/e`
    InverseE,
    /// `1/2`
    Half,
    /// `(r/(r+1))^r`
    PascalPower { r: u64 },
}

impl Claim {
    pub fn for_family(family: Family) -> Self {
        match family {
            Family::Poisson => Claim::InverseE,
            Family::Geometric => Claim::Half,
            Family::Pascal { r } => Claim::PascalPower { r },
        }
    }

    pub fn label(self) -> String {
        match self {
            Claim::InverseE => "1/e".into(),
            Claim::Half => "1/2".into(),
            Claim::PascalPower { r } => format!("({r}/{})^{r}", r + 1),
        }
    }

    pub fn value(self, precision_bits: u32) -> Result<Value> {
        Ok(match self {
            Claim::InverseE => Value::Certified(exp_enclosure(&Rational::from_integer(-1), precision_bits)?),
            Claim::Half => Value::Exact(Rational::new(1, 2)),
            Claim::PascalPower { r } => Value::Exact(pascal_claimed_infimum(r)?),
        })
    }
}

/// Parameter/value pair on the way to an unattained infimum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct WitnessPoint {
    pub param: Rational,
    pub value: Value,
}

/// Global infimum over a finite scan of pieces.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct InfimumReport {
    pub family: Family,
    pub first_piece: u64,
    pub scan_bound: u64,
    pub pieces: Vec<PieceReport>,
    pub global_infimum: Value,
    pub argmin_piece: u64,
    /// Always false; no piece attains its infimum.
    pub attained: bool,
    /// Parameters approaching the argmin piece's open endpoint.
    pub witness: Vec<WitnessPoint>,
    pub claim: Claim,
    pub claimed_value: Value,
    pub agrees_with_claim: bool,
    pub notes: Vec<String>,
}

impl InfimumReport {
    /// Number of pieces examined.
    pub fn pieces_scanned(&self) -> u64 {
        self.pieces.len() as u64
    }
}

/// Mean at which the Poisson report probes the large-lambda limit.
pub const CLT_PROBE_LAMBDA: u64 = 10_000;
const WITNESS_STEPS: u32 = 6;

/// Minimum of the per-piece infima over pieces `first..=scan_bound`.
///
/// Poisson comparisons use adaptive precision from `precision_bits` up to
/// `max_precision_bits` and fail with [`Error::Undecided`] if two piece
/// infima cannot be ordered.
pub fn global_infimum(family: Family, scan_bound: u64, precision_bits: u32, max_precision_bits: u32) -> Result<InfimumReport> {
    let first = family.first_piece();
    if scan_bound < first {
        return Err(domain(format!("scan bound {scan_bound} is below the first {family} piece {first}")));
    }
    let pieces = piece_decompose(family, first, scan_bound, precision_bits)?;
    let mut notes = Vec::new();
    let mut argmin = 0usize;
    match family {
        Family::Poisson => {
            let mut increasing = true;
            for i in 1..pieces.len() {
                let (k_best, k) = (pieces[argmin].piece_index, pieces[i].piece_index);
                let diff = |bits: u32| {
                    let cur = poisson_piece_infimum(k, bits)?;
                    let best = poisson_piece_infimum(k_best, bits)?;
                    Ok(cur.sub(&best))
                };
                match decide_sign_from(precision_bits, max_precision_bits, diff) {
                    Sign::Negative => {
                        argmin = i;
                        increasing = false;
                    }
                    Sign::Positive => {}
                    Sign::Zero | Sign::Undecided => {
                        return Err(Error::Undecided {
                            what: format!("Poisson piece infima k={k_best} vs k={k}"),
                            max_bits: max_precision_bits,
                        })
                    }
                }
                if increasing && i + 1 < pieces.len() {
                    let (a, b) = (pieces[i].piece_index, pieces[i + 1].piece_index);
                    let step = |bits: u32| {
                        Ok(poisson_piece_infimum(b, bits)?.sub(&poisson_piece_infimum(a, bits)?))
                    };
                    if decide_sign_from(precision_bits, max_precision_bits, step) != Sign::Positive {
                        increasing = false;
                    }
                }
            }
            notes.push(format!("exhaustive on pieces k=0..={scan_bound}; no claim about unscanned pieces"));
            if increasing {
                notes.push(format!(
                    "piece infima P(X_(k+1) <= k) strictly increasing on k=0..={scan_bound} (separated enclosures)"
                ));
            } else {
                notes.push("piece infima not strictly increasing on the scanned range".into());
            }
            let probe = poisson_mean_tail(&Rational::from_integer(CLT_PROBE_LAMBDA), precision_bits)?;
            notes.push(format!(
                "large-mean probe: P(X <= lambda) at lambda={CLT_PROBE_LAMBDA} is {} (limit 1/2)",
                probe.midpoint().to_decimal_string(12)
            ));
        }
        _ => {
            for (i, piece) in pieces.iter().enumerate() {
                let cur = piece.piece_infimum.as_exact().expect("exact family");
                let best = pieces[argmin].piece_infimum.as_exact().expect("exact family");
                if cur < best {
                    argmin = i;
                }
            }
            notes.push(format!("exhaustive on pieces {first}..={scan_bound}; no claim about unscanned pieces"));
        }
    }
    let best = &pieces[argmin];
    let claim = Claim::for_family(family);
    let claimed_value = claim.value(precision_bits)?;
    let agrees_with_claim = match (&best.piece_infimum, &claimed_value) {
        (Value::Exact(a), Value::Exact(b)) => a == b,
        (a, b) => a.to_certified(precision_bits).overlaps(&b.to_certified(precision_bits)),
    };
    let witness = witness_sequence(family, best, precision_bits)?;
    Ok(InfimumReport {
        family,
        first_piece: first,
        scan_bound,
        global_infimum: best.piece_infimum.clone(),
        argmin_piece: best.piece_index,
        pieces,
        attained: false,
        witness,
        claim,
        claimed_value,
        agrees_with_claim,
        notes,
    })
}

/// Parameters `endpoint ± width / 2^j` inside the piece, with their values.
fn witness_sequence(family: Family, piece: &PieceReport, precision_bits: u32) -> Result<Vec<WitnessPoint>> {
    let iv = &piece.interval;
    let width = &iv.hi - &iv.lo;
    (1..=WITNESS_STEPS)
        .map(|j| {
            let offset = &width * &Rational::new(1, 1u64 << j);
            let param = match piece.approach {
                Approach::FromAbove => &iv.lo + &offset,
                Approach::FromBelow => &iv.hi - &offset,
            };
            let value = mean_tail(family, &param, precision_bits)?;
            Ok(WitnessPoint { param, value })
        })
        .collect()
}
