use std::process::{Command, Output};

fn meantail(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_meantail")).args(args).output().unwrap()
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn compute_examples() {
    let out = meantail(&["compute", "--family", "geometric", "--p", "1/2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).ends_with("\"3/4\",0.750000000000\n"));

    let out = meantail(&["compute", "--family", "pascal", "--r", "2", "--p", "2/3"]);
    assert!(stdout(&out).contains("\"20/27\",0.740740740741"));

    let out = meantail(&["compute", "--family", "poisson", "--lambda", "1"]);
    assert!(stdout(&out).contains("\"0.735758882343 ± "));

    // Decimal input is exact: 0.6 is 3/5.
    let out = meantail(&["compute", "--family", "pascal", "--r", "2", "--p", "0.6"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"r=2; p=3/5\""));

    let out = meantail(&["compute", "--family", "binomial", "--n", "3", "--p", "2/3", "--threshold", "1"]);
    assert!(stdout(&out).contains("\"7/27\""));
}

#[test]
fn scan_examples() {
    let out = meantail(&["scan", "--family", "geometric", "--pieces", "1..5"]);
    let text = stdout(&out);
    let lines: Vec<_> = text.lines().collect();
    assert_eq!(lines.len(), 6);
    assert!(lines[1].contains("\"1/2\""));
    assert!(lines[2].contains("\"5/9\""));
    assert!(lines[3].contains("\"37/64\""));

    let out = meantail(&["scan", "--family", "pascal", "--r", "3", "--pieces", "3..6"]);
    let text = stdout(&out);
    assert!(text.contains("\"27/64\"") && text.contains("\"297/625\"") && text.contains(",\"1/2\","));

    let out = meantail(&["scan", "--family", "poisson", "--pieces", "0..3"]);
    assert!(stdout(&out).contains("0.367879441171"));

    let out = meantail(&["scan", "--family", "geometric", "--from", "1/2", "--to", "1", "--count", "3"]);
    assert!(stdout(&out).contains("\"3/4\""));

    let out = meantail(&["scan", "--family", "geometric", "--pieces", "5..1"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn infimum_examples() {
    let out = meantail(&["infimum", "--family", "geometric"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"1/2\",0.500000000000,1,\"false\",\"1/2\""));

    let out = meantail(&["infimum", "--family", "pascal", "--r", "2", "--n-max", "1000"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("\"4/9\",0.444444444444,2,"));

    let out = meantail(&["--format", "json", "infimum", "--family", "poisson", "--k-max", "200"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("\"argmin_piece\": 0") && text.contains("\"attained\": false"));
    assert!(text.contains("\"midpoint_decimal\": \"0.367879441171\""));
}

#[test]
fn verify_json_is_keyed_by_check_name() {
    let out = meantail(&["verify", "pascal-conjecture", "--r", "3", "--n-max", "50", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.trim_start().starts_with("{\n  \"pascal_minimum_r3\": {"));
    assert!(text.contains("\"status\": \"passed\""));
    assert!(text.contains("328/390625"));
}

#[test]
fn verify_suites_pass() {
    for args in [
        &["verify", "chvatal", "--n-max", "40"][..],
        &["verify", "probes", "--grid-points", "16", "--n-max", "100"],
        &["verify", "pascal-identity", "--samples", "100"],
        &["verify", "closed-forms", "--n-max", "100"],
        &["verify", "geometric", "--n-max", "200"],
    ] {
        let out = meantail(args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        assert!(stdout(&out).lines().skip(1).all(|l| l.contains("\"passed\",\"true\"")));
    }
}

#[test]
fn exit_codes() {
    assert_eq!(meantail(&["verify", "bogus"]).status.code(), Some(2));
    assert_eq!(meantail(&["compute", "--family", "geometric", "--p", "3/2"]).status.code(), Some(2));
    assert_eq!(meantail(&["compute", "--family", "geometric"]).status.code(), Some(2));
    assert_eq!(meantail(&["--precision", "8192", "verify", "chvatal"]).status.code(), Some(2));
    assert_eq!(meantail(&["verify", "all", "--n-max", "5"]).status.code(), Some(2));
    assert_eq!(meantail(&["verify", "chvatal", "--n-max", "1"]).status.code(), Some(2));
    // A band of zero cannot hold at the grid end: counterexample.
    let out = meantail(&["verify", "probes", "--band", "0", "--grid-points", "8"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("\"failed\",\"false\""));
    // An 8-bit budget cannot separate the binomial-to-Poisson gaps.
    let out = meantail(&["--precision", "8", "--max-precision", "8", "verify", "poisson", "--k-max", "100"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn constants_table_and_out_file() {
    let dir = std::env::temp_dir().join(format!("meantail-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("constants.csv");
    let out = meantail(&["--constants-table", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    assert_eq!(text.lines().count(), 1 + 4 + 20);
    assert!(text.contains("\"4/9\"") && text.contains("\"27/64\""));
    assert!(text.contains("\"(20/21)^20\""));
    assert!(!text.contains('\r'));
    std::fs::remove_dir_all(&dir).unwrap();
}
