use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_englert-sums"))
}

fn run(args: &[&str]) -> Output {
    bin().args(args).output().unwrap()
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

#[test]
fn eval_reports_path() {
    let o = run(&["eval", "C", "1", "0.25"]);
    assert!(o.status.success());
    let s = stdout(&o);
    assert!(s.starts_with("-2.08333333333333"), "{s}");
    assert!(s.contains("path=polynomial"));
}

#[test]
fn coeffs_csv_ends_with_last_coefficient() {
    let s = stdout(&run(&["coeffs", "3", "--csv"]));
    let rows: Vec<_> = s.lines().skip(1).collect();
    assert_eq!(rows.len(), 4);
    assert!(rows[3].ends_with(",2,45"));
    assert_eq!(
        stdout(&run(&["coeffs", "0", "--bernoulli", "1"])).trim(),
        "-1/2"
    );
}

#[test]
fn table_lists_exclusions() {
    let o = run(&["table", "Sp", "0", "-1", "1", "9"]);
    assert!(o.status.success());
    let s = stdout(&o);
    let data: Vec<_> = s.lines().skip(1).filter(|l| !l.starts_with('#')).collect();
    assert_eq!(data.len(), 9 - 2);
    assert!(s.lines().last().unwrap().starts_with('#'));
    assert!(s.contains("# 5.0000000000000000e-1"));
}

#[test]
fn table_json_parses() {
    let s = stdout(&run(&[
        "table", "C", "2", "0", "1", "5", "--format", "json",
    ]));
    let v: serde_json::Value = serde_json::from_str(&s).unwrap();
    assert_eq!(v["rows"].as_array().unwrap().len(), 5);
    assert_eq!(v["rows"][0]["path"], "polynomial");
}

#[test]
fn oracle_prints_report() {
    let s = stdout(&run(&["oracle", "C", "2", "0", "--tol", "1e-8"]));
    assert!(s.contains("mode=absolute"));
    let v: f64 = s.lines().next().unwrap()["value=".len()..].parse().unwrap();
    assert!((v + 7.0 / 720.0).abs() < 1e-8);
}

#[test]
fn polylog_catalan() {
    let s = stdout(&run(&["polylog", "2", "1.5707963267948966"]));
    assert!(s.contains("im=9.15965594177219"), "{s}");
}

#[test]
fn error_lines_and_exit_codes() {
    let o = run(&["eval", "tCp", "0", "0"]);
    assert_eq!(o.status.code(), Some(3));
    let err = String::from_utf8(o.stderr).unwrap();
    assert!(err.starts_with("E11: "), "{err}");
    assert_eq!(run(&["eval", "Z", "1", "0"]).status.code(), Some(1));
    assert_eq!(run(&["eval", "C"]).status.code(), Some(1));
    assert_eq!(
        run(&["oracle", "C", "1", "0", "--tol", "1e-12"])
            .status
            .code(),
        Some(3)
    );
    assert_eq!(run(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_is_deterministic_across_thread_counts() {
    let dir = tempfile::tempdir().unwrap();
    let mut outputs = Vec::new();
    for threads in ["1", "3"] {
        let report = dir.path().join(format!("r{threads}.csv"));
        let o = bin()
            .env("ENGLERT_SUMS_THREADS", threads)
            .args(["verify", "--families", "S,C,Sp,Cp", "--orders", "0..3"])
            .args(["--grid", "-1.3", "2.7", "41", "--tol", "1e-8", "--report"])
            .arg(&report)
            .output()
            .unwrap();
        assert_eq!(o.status.code(), Some(0));
        assert!(stdout(&o).trim_end().starts_with("PASS"));
        outputs.push((o.stdout, std::fs::read(&report).unwrap()));
    }
    assert_eq!(outputs[0], outputs[1]);
    let report = String::from_utf8(outputs[0].1.clone()).unwrap();
    assert_eq!(
        report.lines().next().unwrap(),
        "family,n,z,closed_form,oracle,abs_diff,verdict"
    );
}

#[test]
fn verify_tsv_and_bad_grid() {
    let dir = tempfile::tempdir().unwrap();
    let report = dir.path().join("r.tsv");
    let o = bin()
        .args([
            "verify",
            "--families",
            "bS",
            "--orders",
            "1..1",
            "--grid",
            "0",
            "1",
            "5",
        ])
        .args(["--format", "tsv", "--report"])
        .arg(&report)
        .output()
        .unwrap();
    assert!(o.status.success());
    assert!(std::fs::read_to_string(&report)
        .unwrap()
        .starts_with("family\tn\tz"));
    let o = run(&["verify", "--grid", "1", "0", "5"]);
    assert_eq!(o.status.code(), Some(1));
}
