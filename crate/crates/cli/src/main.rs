mod commands;
mod output;
mod suites;

use std::fs::File;
use std::io::{self, BufWriter, Write};
use std::path::PathBuf;
use std::process::ExitCode;

use clap::{Args, Parser, Subcommand, ValueEnum};
use meantail::Rational;

use output::{Format, Style};
use suites::{Suite, SuiteOptions};

#[derive(Debug, Parser)]
#[command(name = "meantail", version, about = "Exact mean-tail probabilities, their infima, and verification suites")]
struct Cli {
    /// Output format.
    #[arg(long, value_enum, default_value_t = Format::Csv, global = true)]
    format: Format,
    /// Write output to PATH instead of standard output.
    #[arg(long, global = true, value_name = "PATH")]
    out: Option<PathBuf>,
    /// Working precision in bits for enclosures.
    #[arg(long, default_value_t = 192, global = true, value_name = "BITS")]
    precision: u32,
    /// Cap for adaptive precision doubling.
    #[arg(long, default_value_t = 4096, global = true, value_name = "BITS")]
    max_precision: u32,
    /// Fractional digits in decimal columns.
    #[arg(long, default_value_t = 12, global = true, value_name = "N")]
    digits: usize,
    /// Worker threads for parallel sweeps.
    #[arg(long, global = true, value_name = "N")]
    jobs: Option<usize>,
    /// Emit the table of key constants and exit.
    #[arg(long)]
    constants_table: bool,
    #[command(subcommand)]
    command: Option<Command>,
}

#[derive(Debug, Subcommand)]
enum Command {
    /// Mean-tail probability, or a cdf value with --threshold.
    Compute(ComputeArgs),
    /// One row per piece (--pieces a..b) or per grid point (--from/--to/--count).
    Scan(ScanArgs),
    /// Global infimum over a finite scan of pieces, compared with the known value.
    Infimum(InfimumArgs),
    /// Run a verification suite.
    Verify(VerifyArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FamilyArg {
    Binomial,
    Poisson,
    Geometric,
    Pascal,
}

fn parse_rational(s: &str) -> Result<Rational, String> {
    s.parse::<Rational>().map_err(|e| e.to_string())
}

#[derive(Debug, Args)]
pub struct ComputeArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    /// Success probability (binomial, geometric, Pascal), e.g. 2/3 or 0.6.
    #[arg(long, value_parser = parse_rational)]
    pub p: Option<Rational>,
    /// Poisson mean.
    #[arg(long, value_parser = parse_rational)]
    pub lambda: Option<Rational>,
    /// Pascal success count.
    #[arg(long)]
    pub r: Option<u64>,
    /// Binomial trial count.
    #[arg(long)]
    pub n: Option<u64>,
    /// Evaluate P(X <= m) instead of P(X <= E[X]).
    #[arg(long, allow_hyphen_values = true, value_name = "M")]
    pub threshold: Option<i64>,
}

#[derive(Debug, Args)]
pub struct ScanArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub r: Option<u64>,
    /// Inclusive piece range, e.g. 1..5.
    #[arg(long, value_name = "A..B", conflicts_with_all = ["from", "to", "count"])]
    pub pieces: Option<String>,
    /// Grid start (parameter p or lambda).
    #[arg(long, value_parser = parse_rational)]
    pub from: Option<Rational>,
    /// Grid end.
    #[arg(long, value_parser = parse_rational)]
    pub to: Option<Rational>,
    /// Number of grid points.
    #[arg(long)]
    pub count: Option<usize>,
}

#[derive(Debug, Args)]
pub struct InfimumArgs {
    #[arg(long, value_enum)]
    pub family: FamilyArg,
    #[arg(long)]
    pub r: Option<u64>,
    /// Last piece scanned (default 1000, or 200 for Poisson).
    #[arg(long, visible_alias = "n-max", visible_alias = "k-max")]
    pub scan_bound: Option<u64>,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(value_enum)]
    pub suite: Suite,
    #[command(flatten)]
    pub options: SuiteOptions,
}

/// Failure classes mapped onto exit codes.
#[derive(Debug)]
pub enum CliError {
    Usage(String),
    Core(meantail::Error),
    Io(io::Error),
}

impl From<meantail::Error> for CliError {
    fn from(e: meantail::Error) -> Self {
        CliError::Core(e)
    }
}

impl From<io::Error> for CliError {
    fn from(e: io::Error) -> Self {
        CliError::Io(e)
    }
}

pub const EXIT_OK: u8 = 0;
pub const EXIT_COUNTEREXAMPLE: u8 = 1;
pub const EXIT_USAGE: u8 = 2;
pub const EXIT_UNDECIDED: u8 = 3;

/// Settings shared by every subcommand.
pub struct RunConfig {
    pub format: Format,
    pub style: Style,
    pub precision_bits: u32,
    pub max_precision_bits: u32,
}

fn open_output(path: Option<&PathBuf>) -> io::Result<Box<dyn Write>> {
    Ok(match path {
        Some(p) => Box::new(BufWriter::new(File::create(p)?)),
        None => Box::new(BufWriter::new(io::stdout().lock())),
    })
}

fn run(cli: Cli) -> Result<u8, CliError> {
    if cli.precision < 8 || cli.precision > cli.max_precision {
        return Err(CliError::Usage(format!(
            "need 8 <= --precision ({}) <= --max-precision ({})",
            cli.precision, cli.max_precision
        )));
    }
    if let Some(jobs) = cli.jobs {
        if jobs == 0 {
            return Err(CliError::Usage("--jobs must be positive".into()));
        }
        rayon::ThreadPoolBuilder::new()
            .num_threads(jobs)
            .build_global()
            .map_err(|e| CliError::Usage(e.to_string()))?;
    }
    let config = RunConfig {
        format: cli.format,
        style: Style { digits: cli.digits },
        precision_bits: cli.precision,
        max_precision_bits: cli.max_precision,
    };
    if cli.constants_table {
        let mut out = open_output(cli.out.as_ref())?;
        commands::constants_table(&mut out, &config)?;
        out.flush()?;
        return Ok(EXIT_OK);
    }
    let Some(command) = cli.command else {
        return Err(CliError::Usage("a subcommand or --constants-table is required".into()));
    };
    let mut out = open_output(cli.out.as_ref())?;
    let code = match command {
        Command::Compute(args) => commands::compute(&mut out, &config, &args)?,
        Command::Scan(args) => commands::scan(&mut out, &config, &args)?,
        Command::Infimum(args) => commands::infimum(&mut out, &config, &args)?,
        Command::Verify(args) => suites::verify(&mut out, &config, args.suite, &args.options)?,
    };
    out.flush()?;
    Ok(code)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(CliError::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(EXIT_USAGE)
        }
        Err(CliError::Core(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(match e {
                meantail::Error::Undecided { .. } | meantail::Error::PrecisionExhausted(_) => EXIT_UNDECIDED,
                meantail::Error::Domain(_) | meantail::Error::Parse(_) => EXIT_USAGE,
            })
        }
        Err(CliError::Io(e)) => {
            eprintln!("error: {e}");
            ExitCode::from(EXIT_USAGE)
        }
    }
}
