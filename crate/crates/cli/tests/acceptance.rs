//! Acceptance criteria, one PASS/FAIL line each. Exits non-zero if any fails.

use std::process::Command;
use std::time::{Duration, Instant};

use meantail::meantail::{mean_tail, poisson_piece_infimum, Family, Value};
use meantail::numerics::{exp_enclosure, ratio, Rational};
use meantail::verification::*;

type Outcome = Result<String, String>;

fn all_passed(reports: &[VerificationReport]) -> Result<(), String> {
    match reports.iter().find(|r| !r.passed()) {
        None => Ok(()),
        Some(r) => Err(format!(
            "{} {}: counterexample {:?}, undecided {:?}",
            r.check_name,
            r.status(),
            r.counterexample,
            r.undecided
        )),
    }
}

fn exact<'a>(report: &'a VerificationReport, label: &str) -> Result<&'a Rational, String> {
    report
        .critical_values
        .iter()
        .find(|(l, _)| l == label)
        .and_then(|(_, v)| v.as_exact())
        .ok_or_else(|| format!("{}: no exact critical value {label}", report.check_name))
}

fn expect_eq(what: &str, got: &Rational, want: &Rational) -> Result<(), String> {
    if got == want {
        Ok(())
    } else {
        Err(format!("{what} = {got}, expected {want}"))
    }
}

fn within(limit: Duration, start: Instant) -> Result<(), String> {
    let t = start.elapsed();
    if t <= limit {
        Ok(())
    } else {
        Err(format!("took {t:?}, limit {limit:?}"))
    }
}

fn chvatal() -> Outcome {
    let start = Instant::now();
    let report = verify_chvatal(300).map_err(|e| e.to_string())?;
    all_passed(&[report])?;
    within(Duration::from_secs(120), start)?;
    Ok("argmin q_m is the unique integer nearest 2n/3 for n in [2, 300]".into())
}

fn poisson() -> Outcome {
    let start = Instant::now();
    let bits = 4096;
    let p0 = poisson_piece_infimum(0, 128).map_err(|e| e.to_string())?;
    let inv_e = exp_enclosure(&ratio(-1, 1), bits).map_err(|e| e.to_string())?;
    if !p0.overlaps(&inv_e) {
        return Err(format!("P(X_1 <= 0) = {p0} does not meet 1/e = {inv_e}"));
    }
    let tol = Rational::from_integer(10).pow(-30);
    if p0.radius() > tol {
        return Err(format!("radius {} exceeds 1e-30", p0.radius()));
    }
    all_passed(&[verify_poisson_increasing(100, Precision::default()).map_err(|e| e.to_string())?])?;
    let Value::Certified(mt) = mean_tail(Family::Poisson, &ratio(10_000, 1), 192).map_err(|e| e.to_string())? else {
        return Err("Poisson mean-tail was not an enclosure".into());
    };
    let half = ratio(1, 2);
    let gap = std::cmp::max(&mt.upper() - &half, &half - &mt.lower());
    if gap >= ratio(1, 100) {
        return Err(format!("mean-tail at 10^4 is {mt}, not within 0.01 of 1/2"));
    }
    within(Duration::from_secs(60), start)?;
    Ok(format!(
        "1/e enclosed with radius {} at 128 bits; P(X_(k+1) <= k) increasing on [0, 100]; P(X <= 10^4) = {}",
        p0.radius().to_scientific_upper(2),
        mt.midpoint().to_decimal_string(6)
    ))
}

fn geometric() -> Outcome {
    let report = verify_geometric(10_000).map_err(|e| e.to_string())?;
    expect_eq("a_1", exact(&report, "a_1")?, &ratio(1, 2))?;
    all_passed(&[report])?;
    Ok("a_1 = 1/2; a_n strictly increasing on [1, 10^4]; f increasing on sampled pieces 1..100".into())
}

fn pascal_identity() -> Outcome {
    let samples = identity_samples(1000, 20_260_101, 10, 100, 1000);
    let ok = samples
        .iter()
        .all(|s| s.r <= 10 && s.m <= 100 && s.m >= s.r && s.p.denom() <= &1000.into());
    if !ok {
        return Err("sample outside r <= 10, m <= 100, denominator <= 1000".into());
    }
    all_passed(&[verify_pascal_identity(&samples).map_err(|e| e.to_string())?])?;
    Ok("P(B*(r,p) <= m) = P(B(m,p) >= r) on 1000 seeded samples".into())
}

fn closed_forms() -> Outcome {
    let report = verify_closed_forms(2000).map_err(|e| e.to_string())?;
    expect_eq("a_2(2)", exact(&report, "a_2(2)")?, &ratio(4, 9))?;
    expect_eq("b_2(3)", exact(&report, "b_2(3)")?, &ratio(1, 2))?;
    let a23 = exact(&report, "a_2(3)")?;
    expect_eq("a_2(3)", a23, &ratio(1, 2))?;
    if a23 >= &ratio(5, 9) {
        return Err("a_2(3) is not below 5/9".into());
    }
    expect_eq("a_3(3)", exact(&report, "a_3(3)")?, &ratio(27, 64))?;
    expect_eq("a_3(4)", exact(&report, "a_3(4)")?, &ratio(297, 625))?;
    if !report.notes.iter().any(|n| n.contains("328/390625")) {
        return Err("a_3(4) erratum note missing".into());
    }
    all_passed(&[report])?;
    Ok("closed forms equal the term sums on [2, 2000] and [3, 2000]; a_3(4) = 297/625 with erratum note".into())
}

fn conjecture() -> Outcome {
    let start = Instant::now();
    let rs: Vec<u64> = (1..=20).collect();
    let reports = verify_pascal_conjecture_many(&rs, 10_000).map_err(|e| e.to_string())?;
    for (r, report) in rs.iter().zip(&reports) {
        let claim = ratio(*r as i64, *r as i64 + 1).pow(*r as i64);
        expect_eq(&format!("a_{r}({r})"), exact(report, &format!("a_{r}({r})"))?, &claim)?;
    }
    all_passed(&reports)?;
    within(Duration::from_secs(600), start)?;
    Ok("a_r(r) = (r/(r+1))^r and a_r(n) > a_r(r) for r in [1, 20], n in (r, 10^4]".into())
}

fn probes() -> Outcome {
    let p = Precision::new(192, 4096).map_err(|e| e.to_string())?;
    let end = ratio(1_000_000, 1);
    let g2 = ProbeGrid::logarithmic(ratio(3, 1), end.clone(), 64).map_err(|e| e.to_string())?;
    let g3 = ProbeGrid::logarithmic(ratio(4, 1), end, 64).map_err(|e| e.to_string())?;
    let reports = [
        probe_h2(&g2, DEFAULT_BAND_FACTOR, p),
        probe_h3(&g3, DEFAULT_BAND_FACTOR, p),
        probe_positivity_polynomials(&g2, &g3),
        probe_b_sequences(1000),
    ]
    .into_iter()
    .collect::<meantail::Result<Vec<_>>>()
    .map_err(|e| e.to_string())?;
    all_passed(&reports)?;
    Ok("h2, h3 negative and increasing on 64-point log grids; both polynomials positive; b_2, b_3 decreasing to 10^3".into())
}

fn binomial_limit() -> Outcome {
    let mut reports = Vec::new();
    for k in 0..=2 {
        reports.push(verify_binomial_poisson_limit(k, &[10, 100, 1000], Precision::default()).map_err(|e| e.to_string())?);
    }
    all_passed(&reports)?;
    Ok("binomial-to-Poisson gap strictly decreasing along n = 10, 100, 1000 for k = 0, 1, 2".into())
}

fn determinism() -> Outcome {
    let run = || {
        let out = Command::new(env!("CARGO_BIN_EXE_meantail"))
            .args(["verify", "all", "--format", "csv"])
            .output()
            .map_err(|e| e.to_string())?;
        if !out.status.success() {
            return Err(format!("exit status {:?}", out.status.code()));
        }
        Ok(out.stdout)
    };
    let (a, b) = (run()?, run()?);
    if a != b {
        return Err("CSV output differs between runs".into());
    }
    Ok(format!("`verify all --format csv` byte-identical across two runs ({} bytes)", a.len()))
}

fn main() {
    let criteria: [(&str, fn() -> Outcome); 9] = [
        ("chvatal-minimizer", chvatal),
        ("poisson-infimum", poisson),
        ("geometric-infimum", geometric),
        ("pascal-identity", pascal_identity),
        ("closed-forms", closed_forms),
        ("pascal-minimum-sweep", conjecture),
        ("proof-probes", probes),
        ("binomial-poisson-limit", binomial_limit),
        ("determinism", determinism),
    ];
    let mut failed = 0;
    for (name, check) in criteria {
        let start = Instant::now();
        match check() {
            Ok(detail) => println!("PASS {name}: {detail} [{:.1?}]", start.elapsed()),
            Err(why) => {
                failed += 1;
                println!("FAIL {name}: {why}");
            }
        }
    }
    println!("{} of {} acceptance criteria passed", criteria.len() - failed, criteria.len());
    if failed > 0 {
        std::process::exit(1);
    }
}
