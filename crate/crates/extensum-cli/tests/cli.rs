//! End-to-end tests of the `extensum` binary: golden table rows, the
//! JSON round-trip invariant, and the exit-code contract.

use std::io::Write;
use std::process::{Command, Output};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_extensum"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn ok(args: &[&str]) -> String {
    let out = run(args);
    assert!(
        out.status.success(),
        "{:?} failed: {}",
        args,
        stderr(&out)
    );
    stdout(&out)
}

fn write_file(dir: &tempfile::TempDir, name: &str, content: &str) -> String {
    let path = dir.path().join(name);
    let mut f = std::fs::File::create(&path).unwrap();
    f.write_all(content.as_bytes()).unwrap();
    path.to_str().unwrap().to_string()
}

#[test]
fn extend_prints_the_second_order_root_row() {
    let text = ok(&["extend", "--model", "anharmonic", "--order", "2"]);
    assert!(
        text.contains("roots (weight): 1.062 (191)  1.135 (191)"),
        "{text}"
    );
    assert!(text.contains("varpi = 1.0621855"), "{text}");
    assert!(text.contains("B_9 = 0.3223286 (predicted)"), "{text}");
}

#[test]
fn extend_zero_dim_parameter_is_one() {
    let text = ok(&["extend", "--model", "zero-dim", "--order", "1"]);
    assert!(text.lines().any(|l| l == "varpi = 1"), "{text}");
    assert!(text.contains("(predicted)"), "{text}");
}

#[test]
fn extend_uniform_worked_example() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "series.txt", "# geometric-squared series\n1, 2, 3\n");
    let text = ok(&["extend", "--series", &path, "--signature", "1|1|1"]);
    assert!(text.lines().any(|l| l == "varpi = -1"), "{text}");
    assert!(text.contains("A^0 = 1\nA^1 = 1\nA^2 = 0"), "{text}");
    assert!(text.contains("B_3 = 4 (predicted)"), "{text}");
}

#[test]
fn predict_prints_the_second_order_row() {
    let text = ok(&["predict", "--model", "anharmonic", "--order", "2"]);
    assert!(
        text.contains("B_9: 0.3223 (selected), 0.3211; exact 0.3252"),
        "{text}"
    );
}

#[test]
fn predict_fifth_order_folds_conjugate_pairs() {
    let text = ok(&["predict", "--model", "anharmonic", "--order", "5"]);
    assert!(text.contains("-15.6165 ± 0.0034i (selected)"), "{text}");
    assert!(text.contains("exact -15.6208"), "{text}");
}

#[test]
fn predict_zero_dim_estimate_equals_exact_value() {
    let csv = ok(&[
        "predict", "--model", "zero-dim", "--order", "1", "--format", "csv",
    ]);
    let mut selected = None;
    let mut exact = None;
    for line in csv.lines().skip(1) {
        let fields: Vec<&str> = line.split(',').collect();
        match fields[0] {
            "estimate" if fields[3] == "true" => selected = Some(fields[1].to_string()),
            "exact" => exact = Some(fields[1].to_string()),
            _ => {}
        }
    }
    let (selected, exact) = (selected.unwrap(), exact.unwrap());
    assert_eq!(selected, exact, "{csv}");
}

#[test]
fn sum_prints_the_first_order_coupling_row() {
    let text = ok(&[
        "sum", "--model", "anharmonic", "--order", "1", "--lambda", "2",
    ]);
    assert!(text.contains("lambda = 2: 0.6957043"), "{text}");
    assert!(text.contains("oracle 0.6961758"), "{text}");
    assert!(text.contains("(7e-4)"), "{text}");
}

#[test]
fn sum_zero_dim_matches_its_oracle() {
    let csv = ok(&[
        "sum", "--model", "zero-dim", "--order", "1", "--lambda", "1", "--format", "csv",
    ]);
    let row = csv.lines().nth(1).unwrap();
    let fields: Vec<&str> = row.split(',').collect();
    let est: f64 = fields[1].parse().unwrap();
    let oracle: f64 = fields[4].parse().unwrap();
    assert!((est - oracle).abs() < 1e-10, "{row}");
    assert_eq!(fields[6], "ok");
}

#[test]
fn strong_prints_the_leading_coefficient_table() {
    let text = ok(&[
        "strong", "--model", "anharmonic", "--order", "1,3,5",
    ]);
    assert!(text.contains("p = 1: 0.4200139 (2e-3)"), "{text}");
    assert!(text.contains("p = 3: 0.4208109 ± 0.0000952i (2e-4)"), "{text}");
    assert!(text.contains("p = 5: 0.4208087 ± 0.0000033i (1e-5)"), "{text}");
    assert!(text.contains("oracle = 0.4208050"), "{text}");
}

#[test]
fn json_report_round_trips_bit_for_bit() {
    let dir = tempfile::tempdir().unwrap();
    let first = ok(&[
        "extend", "--model", "anharmonic", "--order", "3", "--format", "json",
    ]);
    let path = write_file(&dir, "report.json", &first);
    let second = ok(&["extend", "--series", &path, "--format", "json"]);
    assert_eq!(first, second);
}

#[test]
fn rational_coefficient_file_matches_the_model() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(
        &dir,
        "rat.json",
        r#"{"signature": "2|-1|3", "coefficients": ["1/2", "3/16", "-21/128"]}"#,
    );
    let from_file = ok(&["extend", "--series", &path]);
    let from_model = ok(&["extend", "--model", "anharmonic", "--order", "2"]);
    assert_eq!(from_file, from_model);
}

#[test]
fn order_flag_truncates_a_longer_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "series.txt", "1 2 3 4\n");
    let full = ok(&["extend", "--series", &path, "--signature", "1|1|1"]);
    assert!(full.contains("order p = 3"), "{full}");
    let cut = ok(&[
        "extend", "--series", &path, "--signature", "1|1|1", "--order", "2",
    ]);
    assert!(cut.contains("order p = 2"), "{cut}");

    let out = run(&[
        "extend", "--series", &path, "--signature", "1|1|1", "--order", "5",
    ]);
    assert_eq!(out.status.code(), Some(2), "{}", stderr(&out));
    assert!(stderr(&out).contains("--order 5 needs 6 coefficients"));
}

#[test]
fn usage_problems_exit_with_2() {
    for args in [
        &["extend", "--model", "bogus", "--order", "2"][..],
        &["extend", "--model", "anharmonic"][..],
        &["extend", "--model", "anharmonic", "--order", "9"][..],
        &["extend", "--series", "/nonexistent/series.txt"][..],
        &["sum", "--model", "anharmonic", "--order", "1", "--lambda=-2"][..],
    ] {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}: {}", stderr(&out));
    }

    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "nosig.txt", "1 2 3\n");
    let out = run(&["extend", "--series", &path]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("--signature"), "{}", stderr(&out));
}

#[test]
fn degenerate_root_equation_exits_with_3() {
    let dir = tempfile::tempdir().unwrap();
    let path = write_file(&dir, "degenerate.txt", "1 2 0 0\n");
    let out = run(&["extend", "--series", &path, "--signature", "1|1|1"]);
    assert_eq!(out.status.code(), Some(3), "{}", stderr(&out));
    assert!(stderr(&out).contains("order reduction"), "{}", stderr(&out));
}

#[test]
fn identical_flags_give_identical_output() {
    let args = [
        "strong", "--model", "anharmonic", "--order", "2,4", "--format", "csv",
    ];
    assert_eq!(ok(&args), ok(&args));
}
