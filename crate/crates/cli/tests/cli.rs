#![allow(clippy::excessive_precision)]

use mpt_cli::{run, EXIT_FAILED, EXIT_OK, EXIT_USAGE};
use serde_json::Value;

struct Outcome {
    code: i32,
    stdout: String,
    stderr: String,
}

fn mpt(args: &[&str]) -> Outcome {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("mpt").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    Outcome { code, stdout: String::from_utf8(out).unwrap(), stderr: String::from_utf8(err).unwrap() }
}

fn csv_rows(text: &str) -> Vec<Vec<String>> {
    csv::Reader::from_reader(text.as_bytes())
        .records()
        .map(|r| r.unwrap().iter().map(str::to_owned).collect())
        .collect()
}

fn header(text: &str) -> String {
    text.lines().next().unwrap().to_owned()
}

#[test]
fn spectrum_csv() {
    let r = mpt(&["spectrum", "--n-param", "10"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(header(&r.stdout), "n,E_n,delta_n,f2_n");
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 5);
    assert_eq!(rows[4][2], "");
    let e0: f64 = rows[0][1].parse().unwrap();
    assert!((e0 - 0.45249378105604).abs() < 1e-12);
}

#[test]
fn depth_flag_matches_n_param() {
    let a = mpt(&["spectrum", "--depth", "2.5"]);
    let b = mpt(&["spectrum", "--n-param", "10"]);
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(mpt(&["spectrum", "--depth", "2.5", "--n-param", "10"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["spectrum"]).code, EXIT_USAGE);
}

#[test]
fn verify_passes_on_reference_cases() {
    let r = mpt(&["verify", "--n-param", "10", "--alpha", "2+1i"]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.stdout, r.stderr);
    assert!(csv_rows(&r.stdout).iter().all(|row| row[1] == "true"));

    let r = mpt(&["verify", "--n-param", "2.8284271247461903", "--alpha", "5"]);
    assert_eq!(r.code, EXIT_OK, "{}{}", r.stdout, r.stderr);
    assert!(r.stdout.contains("single_level_limits,true"));
}

#[test]
fn verify_reports_failures() {
    // unattainable agreement tolerance for the measure check
    let r = mpt(&["verify", "--n-param", "10", "--alpha", "2", "--tol", "1e-300"]);
    assert_eq!(r.code, EXIT_FAILED);
    assert!(r.stderr.contains("FAILED measure_numeric_vs_closed_form"));
}

#[test]
fn domain_and_usage_errors() {
    let r = mpt(&["verify", "--n-param", "0", "--alpha", "1"]);
    assert_eq!(r.code, EXIT_USAGE);
    assert!(r.stderr.contains("domain error"));
    assert_eq!(mpt(&["verify", "--n-param", "1e4", "--alpha", "1"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["frobnicate"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["spectrum", "--n-param", "10", "--bogus"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["state", "--n-param", "10", "--alpha", "two"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["figure", "4"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["measure", "--n-param", "1e4"]).code, EXIT_USAGE);
    assert_eq!(mpt(&["mandel", "--alpha-abs", "3", "--fig2-grid", "--n-param", "10"]).code, EXIT_USAGE);
}

#[test]
fn help_goes_to_stdout() {
    let r = mpt(&["--help"]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.contains("verify"));
    assert!(r.stderr.is_empty());
}

#[test]
fn mandel_fig2_grid() {
    let r = mpt(&["mandel", "--alpha-abs", "3", "--fig2-grid"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(header(&r.stdout), "N,Q");
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 400);
    assert_eq!(rows[0][0].parse::<f64>().unwrap(), 4.0);
    assert_eq!(rows[399][0].parse::<f64>().unwrap(), 1e3);
}

#[test]
fn sweep_single_point_and_custom_grid() {
    let r = mpt(&["mandel", "--alpha-abs", "3", "--n-param", "1"]);
    assert_eq!(csv_rows(&r.stdout), vec![vec!["1.0000000000000000e0".to_owned(), "-1.0000000000000000e0".to_owned()]]);
    let r = mpt(&["squeeze", "--alpha-abs", "1", "--n-param", "1"]);
    assert_eq!(csv_rows(&r.stdout)[0][1].parse::<f64>().unwrap(), 0.0);
    let r = mpt(&["squeeze", "--alpha-abs", "1", "--n-min", "1", "--n-max", "3", "--steps", "3"]);
    let ns: Vec<f64> = csv_rows(&r.stdout).iter().map(|row| row[0].parse().unwrap()).collect();
    assert_eq!(ns, vec![1.0, 2.0, 3.0]);
    let r = mpt(&["squeeze", "--alpha-abs", "1", "--n-min", "1", "--n-max", "100", "--steps", "3", "--log-scale"]);
    let mid: f64 = csv_rows(&r.stdout)[1][0].parse().unwrap();
    assert!((mid - 10.0).abs() < 1e-12);
}

#[test]
fn figure_one() {
    let r = mpt(&["figure", "1"]);
    assert_eq!(r.code, EXIT_OK);
    assert_eq!(header(&r.stdout), "series,D,x,V");
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 3 * 401);
    let origin = rows.iter().find(|row| row[0] == "D=1" && row[2].parse::<f64>().unwrap() == 0.0).unwrap();
    assert_eq!(origin[3].parse::<f64>().unwrap(), 0.0);
    assert!(rows.iter().any(|row| row[0].contains("harmonic proxy")));
}

#[test]
fn figure_two_and_three_properties() {
    let rows = csv_rows(&mpt(&["figure", "2"]).stdout);
    assert_eq!(rows.len(), 4 * 400);
    let last = rows.iter().rfind(|row| row[0] == "alpha_abs=3").unwrap();
    assert!(last[3].parse::<f64>().unwrap().abs() < 1e-2);

    let rows = csv_rows(&mpt(&["figure", "3"]).stdout);
    assert_eq!(rows.len(), 3 * 400);
    assert!(rows.iter().filter(|row| row[0] == "alpha_abs=0.5").any(|row| row[3].parse::<f64>().unwrap() < 0.0));
}

#[test]
fn json_record_and_echo_round_trip() {
    let args = ["quadrature", "--n-param", "10", "--alpha", "0.5-0.25i", "--steps", "12", "--format", "json"];
    let first = mpt(&args);
    assert_eq!(first.code, EXIT_OK);
    let v: Value = serde_json::from_str(&first.stdout).unwrap();
    assert_eq!(v["schema_version"], "1");
    assert_eq!(v["command"], "quadrature");
    assert_eq!(v["rows"].as_array().unwrap().len(), 12);

    let mut argv = vec![v["command"].as_str().unwrap().to_owned()];
    for (key, value) in v["params_echo"].as_object().unwrap() {
        argv.push(format!("--{key}"));
        match value {
            Value::String(s) => argv.push(s.clone()),
            Value::Number(n) => argv.push(n.to_string()),
            Value::Bool(_) => {}
            other => panic!("unexpected echo value {other}"),
        }
    }
    let argv: Vec<&str> = argv.iter().map(String::as_str).collect();
    let second = mpt(&argv);
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn output_is_deterministic() {
    let args = ["squeeze", "--alpha-abs", "1.3", "--fig3-grid"];
    assert_eq!(mpt(&args).stdout, mpt(&args).stdout);
}

#[test]
fn out_flag_writes_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("state.csv");
    let r = mpt(&["state", "--n-param", "10", "--alpha", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(r.code, EXIT_OK);
    assert!(r.stdout.is_empty());
    let text = std::fs::read_to_string(&path).unwrap();
    let rows = csv_rows(&text);
    assert_eq!(rows.len(), 5);
    let c0: f64 = rows[0][1].parse().unwrap();
    assert!((c0 - 0.11826249433321327587).abs() < 1e-14);
}

#[test]
fn measure_report() {
    let r = mpt(&["measure", "--n-param", "10"]);
    assert_eq!(r.code, EXIT_OK, "{}", r.stderr);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 5);
    for row in &rows {
        let computed: f64 = row[3].parse().unwrap();
        let closed: f64 = row[4].parse().unwrap();
        assert!(((computed - closed) / closed).abs() < 1e-10);
    }
    let r = mpt(&["measure", "--n-param", "1e8", "--levels", "3"]);
    assert_eq!(csv_rows(&r.stdout).len(), 3);
}

#[test]
fn potential_grid() {
    let r = mpt(&["potential", "--depth", "1", "--x-min", "-1", "--x-max", "1", "--steps", "3"]);
    let rows = csv_rows(&r.stdout);
    assert_eq!(rows.len(), 3);
    assert_eq!(rows[1][1].parse::<f64>().unwrap(), 0.0);
}
