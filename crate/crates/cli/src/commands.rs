use std::io::Write;

use meantail::distributions::*;
use meantail::meantail::*;
use meantail::numerics::exp_enclosure;
use meantail::verification::ProbeGrid;
use meantail::Rational;

use crate::output::{write_single, Cell, Record, RecordWriter};
use crate::{CliError, ComputeArgs, FamilyArg, InfimumArgs, RunConfig, ScanArgs, EXIT_COUNTEREXAMPLE, EXIT_OK};

const SCAN_BATCH: u64 = 64;

fn need<T: Clone>(value: &Option<T>, flag: &str, family: FamilyArg) -> Result<T, CliError> {
    value
        .clone()
        .ok_or_else(|| CliError::Usage(format!("--{flag} is required for family {family:?}")))
}

fn family_of(arg: FamilyArg, r: Option<u64>) -> Result<Family, CliError> {
    Ok(match arg {
        FamilyArg::Poisson => Family::Poisson,
        FamilyArg::Geometric => Family::Geometric,
        FamilyArg::Pascal => Family::Pascal { r: need(&r, "r", arg)? },
        FamilyArg::Binomial => {
            return Err(CliError::Usage("binomial has no piece structure; use compute".into()));
        }
    })
}

fn family_params(family: Family) -> Cell {
    match family {
        Family::Pascal { r } => Cell::Group(vec![("r".into(), r.into())]),
        _ => Cell::Group(Vec::new()),
    }
}

/// `compute`: one record with the exact or certified value.
pub fn compute(out: &mut dyn Write, config: &RunConfig, args: &ComputeArgs) -> Result<u8, CliError> {
    let fam = args.family;
    let bits = config.precision_bits;
    let (params, quantity, value): (Vec<(String, Cell)>, String, Value) = match fam {
        FamilyArg::Binomial => {
            let n = need(&args.n, "n", fam)?;
            let p = need(&args.p, "p", fam)?;
            let b = BinomialParams::new(n, p.clone())?;
            let m = match args.threshold {
                Some(m) => m,
                None => i64::try_from(b.mean().floor()).map_err(|_| CliError::Usage("mean too large".into()))?,
            };
            let params = vec![("n".into(), n.into()), ("p".into(), p.into())];
            (params, format!("P(X <= {m})"), Value::Exact(binomial_cdf_leq(&b, m)))
        }
        FamilyArg::Geometric => {
            let p = need(&args.p, "p", fam)?;
            let params = vec![("p".to_string(), Cell::from(p.clone()))];
            match args.threshold {
                Some(m) => {
                    let g = GeometricParams::new(p)?;
                    (params, format!("P(X <= {m})"), Value::Exact(geometric_cdf_leq(&g, m)))
                }
                None => (params, "P(X <= E[X])".into(), Value::Exact(geometric_f(&p)?)),
            }
        }
        FamilyArg::Pascal => {
            let r = need(&args.r, "r", fam)?;
            let p = need(&args.p, "p", fam)?;
            let params = vec![("r".to_string(), Cell::from(r)), ("p".to_string(), Cell::from(p.clone()))];
            match args.threshold {
                Some(m) => {
                    let pc = PascalParams::new(r, p)?;
                    (params, format!("P(X <= {m})"), Value::Exact(pascal_cdf_leq(&pc, m)))
                }
                None => (params, "P(X <= E[X])".into(), Value::Exact(pascal_f(r, &p)?)),
            }
        }
        FamilyArg::Poisson => {
            let lambda = need(&args.lambda, "lambda", fam)?;
            let params = vec![("lambda".to_string(), Cell::from(lambda.clone()))];
            match args.threshold {
                Some(m) => {
                    let pp = PoissonParams::new(lambda)?;
                    let v = if m < 0 {
                        Value::Exact(Rational::zero())
                    } else {
                        Value::Certified(poisson_cdf_leq(&pp, m as u64, bits)?)
                    };
                    (params, format!("P(X <= {m})"), v)
                }
                None => (params, "P(X <= E[X])".into(), Value::Certified(poisson_mean_tail(&lambda, bits)?)),
            }
        }
    };
    let record: Record = vec![
        ("family".into(), format!("{fam:?}").to_lowercase().into()),
        ("parameters".into(), Cell::Group(params)),
        ("quantity".into(), quantity.into()),
        ("value".into(), value.into()),
    ];
    write_single(out, config.format, config.style, &record)?;
    Ok(EXIT_OK)
}

fn parse_range(s: &str) -> Result<(u64, u64), CliError> {
    let bad = || CliError::Usage(format!("expected a piece range A..B, got {s:?}"));
    let (a, b) = s.split_once("..").ok_or_else(bad)?;
    let a: u64 = a.trim().parse().map_err(|_| bad())?;
    let b: u64 = b.trim().trim_start_matches('=').parse().map_err(|_| bad())?;
    if a > b {
        return Err(CliError::Usage(format!("empty piece range {s:?}")));
    }
    Ok((a, b))
}

/// `scan`: rows streamed in index order, computed in batches.
pub fn scan(out: &mut dyn Write, config: &RunConfig, args: &ScanArgs) -> Result<u8, CliError> {
    let family = family_of(args.family, args.r)?;
    let mut writer = RecordWriter::new(out, config.format, config.style);
    if let Some(range) = &args.pieces {
        let (first, last) = parse_range(range)?;
        let mut lo = first;
        while lo <= last {
            let hi = last.min(lo.saturating_add(SCAN_BATCH - 1));
            for piece in piece_decompose(family, lo, hi, config.precision_bits)? {
                writer.write(&vec![
                    ("family".into(), family.name().into()),
                    ("piece_index".into(), piece.piece_index.into()),
                    ("interval".into(), piece.interval.to_string().into()),
                    ("piece_infimum".into(), piece.piece_infimum.into()),
                    ("attained".into(), piece.attained.into()),
                ])?;
            }
            if hi == u64::MAX {
                break;
            }
            lo = hi + 1;
        }
    } else {
        let (Some(from), Some(to), Some(count)) = (&args.from, &args.to, args.count) else {
            return Err(CliError::Usage("scan needs --pieces A..B or all of --from, --to, --count".into()));
        };
        let grid = ProbeGrid::linear(from.clone(), to.clone(), count)?;
        for param in grid.points() {
            let value = mean_tail(family, &param, config.precision_bits)?;
            writer.write(&vec![
                ("family".into(), family.name().into()),
                ("parameter".into(), param.clone().into()),
                ("piece_index".into(), piece_index_of(family, &param)?.into()),
                ("mean_tail".into(), value.into()),
            ])?;
        }
    }
    writer.finish()?;
    Ok(EXIT_OK)
}

/// `infimum`: exit 0 when the scanned infimum agrees with the known value.
pub fn infimum(out: &mut dyn Write, config: &RunConfig, args: &InfimumArgs) -> Result<u8, CliError> {
    let family = family_of(args.family, args.r)?;
    let default_bound = if family == Family::Poisson { 200 } else { 1000 };
    let bound = args.scan_bound.unwrap_or(default_bound);
    let report = global_infimum(family, bound, config.precision_bits, config.max_precision_bits)?;
    let witness = report
        .witness
        .iter()
        .map(|w| (w.param.to_string(), Cell::Num(w.value.clone())))
        .collect();
    let record: Record = vec![
        ("family".into(), family.name().into()),
        ("parameters".into(), family_params(family)),
        ("global_infimum".into(), report.global_infimum.clone().into()),
        ("argmin_piece".into(), report.argmin_piece.into()),
        ("attained".into(), report.attained.into()),
        ("claim".into(), report.claim.label().into()),
        ("claimed_value".into(), report.claimed_value.clone().into()),
        ("agrees_with_claim".into(), report.agrees_with_claim.into()),
        ("first_piece".into(), report.first_piece.into()),
        ("scan_bound".into(), report.scan_bound.into()),
        ("pieces_scanned".into(), report.pieces_scanned().into()),
        ("witness".into(), Cell::Group(witness)),
        ("notes".into(), Cell::List(report.notes.clone())),
    ];
    write_single(out, config.format, config.style, &record)?;
    Ok(if report.agrees_with_claim { EXIT_OK } else { EXIT_COUNTEREXAMPLE })
}

/// Key constants: `1/e`, `1/2`, `4/9`, `27/64` and `(r/(r+1))^r` for `r <= 20`.
pub fn constants_table(out: &mut dyn Write, config: &RunConfig) -> Result<u8, CliError> {
    let mut writer = RecordWriter::new(out, config.format, config.style);
    let mut rows: Vec<(String, String, Value)> = vec![
        (
            "1/e".into(),
            "Poisson global infimum".into(),
            Value::Certified(exp_enclosure(&Rational::from_integer(-1), config.precision_bits)?),
        ),
        ("1/2".into(), "geometric global infimum".into(), Value::Exact(Rational::new(1, 2))),
        ("4/9".into(), "Pascal r=2 global infimum".into(), Value::Exact(Rational::new(4, 9))),
        ("27/64".into(), "Pascal r=3 global infimum".into(), Value::Exact(Rational::new(27, 64))),
    ];
    for r in 1..=20u64 {
        rows.push((
            format!("({r}/{})^{r}", r + 1),
            format!("Pascal r={r} first-piece infimum"),
            Value::Exact(pascal_claimed_infimum(r)?),
        ));
    }
    for (name, role, value) in rows {
        writer.write(&vec![
            ("constant".into(), name.into()),
            ("role".into(), role.into()),
            ("value".into(), value.into()),
        ])?;
    }
    writer.finish()?;
    Ok(EXIT_OK)
}
