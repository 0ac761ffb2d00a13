use std::io::Write;

use clap::{Args, ValueEnum};
use meantail::numerics::ratio;
use meantail::verification::*;
use meantail::Rational;

use crate::output::{write_keyed, Cell, Record};
use crate::{CliError, RunConfig, EXIT_COUNTEREXAMPLE, EXIT_OK, EXIT_UNDECIDED};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Suite {
    Chvatal,
    Poisson,
    Geometric,
    PascalIdentity,
    PascalConjecture,
    ClosedForms,
    Probes,
    All,
}

/// Per-suite bounds; unset fields take the suite defaults.
#[derive(Debug, Clone, Default, Args)]
pub struct SuiteOptions {
    /// Upper scan bound (chvatal, geometric, pascal-conjecture, closed-forms, b-sequences in probes).
    #[arg(long)]
    pub n_max: Option<u64>,
    /// Last Poisson piece index compared.
    #[arg(long)]
    pub k_max: Option<u64>,
    /// Single Pascal r (pascal-conjecture).
    #[arg(long, conflicts_with = "r_max")]
    pub r: Option<u64>,
    /// Check every r in 1..=R (pascal-conjecture).
    #[arg(long)]
    pub r_max: Option<u64>,
    /// Number of pseudo-random identity samples.
    #[arg(long)]
    pub samples: Option<usize>,
    /// Seed for identity samples.
    #[arg(long)]
    pub seed: Option<u64>,
    /// Points per probe grid.
    #[arg(long)]
    pub grid_points: Option<usize>,
    /// Band factor c in |h(end)| < c/end.
    #[arg(long)]
    pub band: Option<u64>,
}

impl SuiteOptions {
    fn is_empty(&self) -> bool {
        self.n_max.is_none()
            && self.k_max.is_none()
            && self.r.is_none()
            && self.r_max.is_none()
            && self.samples.is_none()
            && self.seed.is_none()
            && self.grid_points.is_none()
            && self.band.is_none()
    }
}

pub const DEFAULT_SEED: u64 = 20_260_101;

/// Bounds used by single-suite runs.
fn full_defaults() -> SuiteOptions {
    SuiteOptions {
        n_max: None,
        k_max: Some(100),
        r: None,
        r_max: Some(20),
        samples: Some(1000),
        seed: Some(DEFAULT_SEED),
        grid_points: Some(64),
        band: Some(DEFAULT_BAND_FACTOR),
    }
}

fn n_max_or(opts: &SuiteOptions, default: u64) -> u64 {
    opts.n_max.unwrap_or(default)
}

fn run_one(suite: Suite, opts: &SuiteOptions, reduced: bool, precision: Precision) -> meantail::Result<Vec<VerificationReport>> {
    let d = full_defaults();
    let k_max = opts.k_max.or(d.k_max).unwrap();
    let samples = opts.samples.or(d.samples).unwrap();
    let seed = opts.seed.or(d.seed).unwrap();
    let points = opts.grid_points.or(d.grid_points).unwrap();
    let band = opts.band.or(d.band).unwrap();
    let pick = |full: u64, small: u64| if reduced { small } else { full };
    Ok(match suite {
        Suite::Chvatal => vec![verify_chvatal(n_max_or(opts, pick(300, 100)))?],
        Suite::Poisson => {
            let mut v = vec![verify_poisson_increasing(k_max, precision)?];
            let lambdas = [1, 10, 100, 10_000].map(|l| ratio(l, 1));
            v.push(verify_poisson_clt(&lambdas, &ratio(1, 100), precision)?);
            for (x, a, b) in [(0, ratio(1, 2), ratio(1, 1)), (1, ratio(1, 1), ratio(2, 1)), (3, ratio(2, 1), ratio(3, 1))] {
                v.push(verify_poisson_lambda_monotone(x, &[(a, b)], precision)?);
            }
            for k in 0..=2 {
                v.push(verify_binomial_poisson_limit(k, &[10, 100, 1000], precision)?);
            }
            v
        }
        Suite::Geometric => vec![verify_geometric(n_max_or(opts, pick(10_000, 2000)))?],
        Suite::PascalIdentity => vec![verify_pascal_identity(&identity_samples(samples, seed, 10, 100, 1000))?],
        Suite::PascalConjecture => {
            let rs: Vec<u64> = match opts.r {
                Some(r) => vec![r],
                None => (1..=opts.r_max.unwrap_or(pick(20, 10))).collect(),
            };
            verify_pascal_conjecture_many(&rs, n_max_or(opts, pick(10_000, 2000)))?
        }
        Suite::ClosedForms => vec![verify_closed_forms(n_max_or(opts, pick(2000, 500)))?],
        Suite::Probes => {
            let end = Rational::from_integer(1_000_000);
            let g2 = ProbeGrid::logarithmic(Rational::from_integer(3), end.clone(), points)?;
            let g3 = ProbeGrid::logarithmic(Rational::from_integer(4), end, points)?;
            let mut v = vec![
                probe_h2(&g2, band, precision)?,
                probe_h3(&g3, band, precision)?,
                probe_positivity_polynomials(&g2, &g3)?,
                probe_b_sequences(n_max_or(opts, 1000))?,
            ];
            for (r, n) in [(1, 1), (2, 2), (2, 3), (3, 5), (5, 12)] {
                v.push(probe_gk_monotone(r, n, 16)?);
            }
            v
        }
        Suite::All => {
            let mut v = Vec::new();
            for s in [
                Suite::Chvatal,
                Suite::Poisson,
                Suite::Geometric,
                Suite::PascalIdentity,
                Suite::PascalConjecture,
                Suite::ClosedForms,
                Suite::Probes,
            ] {
                v.extend(run_one(s, &SuiteOptions::default(), true, precision)?);
            }
            v
        }
    })
}

/// Runs `suite` with the library defaults (`all` uses reduced bounds).
pub fn run_suite(suite: Suite, opts: &SuiteOptions, precision: Precision) -> meantail::Result<Vec<VerificationReport>> {
    run_one(suite, opts, false, precision)
}

fn report_record(r: &VerificationReport) -> Record {
    let params = r.parameters.iter().map(|(k, v)| (k.clone(), Cell::Text(v.clone()))).collect();
    let counterexample = match &r.counterexample {
        Some(cx) => Cell::Group(vec![
            ("input".into(), cx.input.clone().into()),
            ("expected_relation".into(), cx.expected_relation.clone().into()),
            (
                "actual".into(),
                Cell::Group(cx.actual.iter().map(|(l, v)| (l.clone(), Cell::Num(v.clone()))).collect()),
            ),
        ]),
        None => Cell::Missing,
    };
    let critical = r.critical_values.iter().map(|(l, v)| (l.clone(), Cell::Num(v.clone()))).collect();
    vec![
        ("check_name".into(), r.check_name.clone().into()),
        ("status".into(), r.status().as_str().into()),
        ("passed".into(), r.passed().into()),
        ("parameters".into(), Cell::Group(params)),
        ("range_scanned".into(), r.range_scanned.clone().into()),
        ("counterexample".into(), counterexample),
        ("undecided".into(), r.undecided.clone().map(Cell::Text).unwrap_or(Cell::Missing)),
        ("critical_values".into(), Cell::Group(critical)),
        ("notes".into(), Cell::List(r.notes.clone())),
    ]
}

/// Exit code for a set of reports: 1 on any counterexample, else 3 on any
/// undecided sign, else 0.
pub fn exit_code(reports: &[VerificationReport]) -> u8 {
    if reports.iter().any(|r| r.status() == Status::Failed) {
        EXIT_COUNTEREXAMPLE
    } else if reports.iter().any(|r| r.status() == Status::Undecided) {
        EXIT_UNDECIDED
    } else {
        EXIT_OK
    }
}

pub fn verify(out: &mut dyn Write, config: &RunConfig, suite: Suite, opts: &SuiteOptions) -> Result<u8, CliError> {
    if suite == Suite::All && !opts.is_empty() {
        return Err(CliError::Usage("suite options cannot be combined with `all`".into()));
    }
    let precision = Precision::new(config.precision_bits, config.max_precision_bits)?;
    let reports = run_suite(suite, opts, precision)?;
    let records: Vec<Record> = reports.iter().map(report_record).collect();
    write_keyed(out, config.format, config.style, &records)?;
    Ok(exit_code(&reports))
}
