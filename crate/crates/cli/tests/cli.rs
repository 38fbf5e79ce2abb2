use std::process::{Command, Output};

use twochoice::cli::{run, EXIT_CAPPED, EXIT_OK, EXIT_USAGE};
use twochoice::report::{EXACT_HEADER, SIMULATE_HEADER};

fn bin(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_twochoice"))
        .args(args)
        .env_remove("TWOCHOICE_JOBS")
        .output()
        .expect("spawn twochoice")
}

fn in_process(args: &[&str]) -> (i32, String, String) {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let argv = std::iter::once("twochoice").chain(args.iter().copied());
    let code = run(argv, &mut out, &mut err);
    (code, String::from_utf8(out).unwrap(), String::from_utf8(err).unwrap())
}

fn rows(csv: &str) -> Vec<Vec<String>> {
    csv.lines().skip(1).map(|l| l.split(',').map(str::to_owned).collect()).collect()
}

#[test]
fn simulate_regular_ceil_log_rows() {
    let (code, out, err) = in_process(&[
        "simulate", "--graph", "regular", "--d-rule", "ceil-log", "--alpha", "0.05", "--p", "0.8",
        "--n-list", "100,200,400", "--trials", "50", "--seed", "7",
    ]);
    assert_eq!(code, EXIT_OK, "{err}");
    assert_eq!(out.lines().next().unwrap(), SIMULATE_HEADER.join(","));
    let rows = rows(&out);
    assert_eq!(rows.len(), 3);
    let degrees: Vec<&str> = rows.iter().map(|r| r[2].as_str()).collect();
    assert_eq!(degrees, ["5", "6", "6"]);
    for r in &rows {
        assert_eq!(r[0], "regular");
        assert_eq!(r[9], "0");
        assert_eq!(r[10], "7");
    }
    assert!(err.starts_with("# log_base=e"));
}

#[test]
fn coupon_collector_through_the_binary() {
    let o = bin(&["simulate", "--graph", "complete", "--alpha", "1.0", "--p", "0", "--n-list", "100", "--trials", "2000", "--jobs", "2"]);
    assert_eq!(o.status.code(), Some(EXIT_OK));
    let out = String::from_utf8(o.stdout).unwrap();
    let row = &rows(&out)[0];
    let mean: f64 = row[6].parse().unwrap();
    let lo: f64 = row[7].parse().unwrap();
    let hi: f64 = row[8].parse().unwrap();
    let expected = twochoice_testkit::coupon_collector_mean(100);
    // Four standard errors; the 95% half-width is 1.96 of them.
    let four_se = (hi - lo) / 2.0 / 1.96 * 4.0;
    assert!((mean - expected).abs() < four_se, "{mean} vs {expected}");
    assert_eq!(row[2], "99");
    let normalized: f64 = row[11].parse().unwrap();
    assert!((normalized - mean / 100.0).abs() < 1e-9);
}

#[test]
fn missing_alpha_is_a_usage_error() {
    let o = bin(&["simulate", "--graph", "complete", "--p", "0", "--n-list", "10"]);
    assert_eq!(o.status.code(), Some(EXIT_USAGE));
    assert!(o.stdout.is_empty());
    assert!(String::from_utf8_lossy(&o.stderr).contains("--alpha"));
}

#[test]
fn invalid_combinations_are_usage_errors() {
    let cases: [&[&str]; 8] = [
        &["simulate", "--graph", "complete", "--alpha", "0.2", "--p", "0", "--n-list", "10", "--d", "3"],
        &["simulate", "--graph", "regular", "--alpha", "0.2", "--p", "0", "--n-list", "10", "--pedge", "0.1"],
        &["simulate", "--graph", "regular", "--alpha", "0.2", "--p", "0", "--n-list", "10", "--d-rule", "fixed"],
        &["simulate", "--graph", "er", "--alpha", "0.2", "--p", "0", "--n-list", "10", "--pedge", "1.5"],
        &["simulate", "--graph", "complete", "--alpha", "0", "--p", "0", "--n-list", "10"],
        &["simulate", "--graph", "complete", "--alpha", "0.2", "--p", "1", "--n-list", "10"],
        &["simulate", "--graph", "complete", "--alpha", "0.2", "--p", "0", "--n-list", "20,10"],
        &["threshold", "--alpha", "1.0"],
    ];
    for args in cases {
        let (code, out, _) = in_process(args);
        assert_eq!(code, EXIT_USAGE, "{args:?}");
        assert!(out.is_empty(), "{args:?}");
    }
}

#[test]
fn capped_points_exit_with_one() {
    let (code, out, err) = in_process(&[
        "simulate", "--graph", "complete", "--alpha", "0.05", "--p", "0.05", "--n-list", "5,200",
        "--trials", "4", "--step-cap", "2000",
    ]);
    assert_eq!(code, EXIT_CAPPED);
    // The small point completes, the large one fails and is reported.
    assert_eq!(rows(&out).len(), 1);
    assert!(err.contains("n=200"), "{err}");
}

#[test]
fn exact_output() {
    let (code, out, _) = in_process(&["exact", "--alpha", "0.5", "--p", "0", "--n-list", "1,2"]);
    assert_eq!(code, EXIT_OK);
    let mut lines = out.lines();
    assert_eq!(lines.next().unwrap(), EXACT_HEADER.join(","));
    assert!(lines.next().unwrap().starts_with("1,0.5,0,2,"));
    assert!(lines.next().unwrap().starts_with("2,0.5,0,5.6,"));
}

#[test]
fn exact_slow_regime_stays_finite_in_log10() {
    let (code, out, _) = in_process(&["exact", "--alpha", "0.01", "--p", "0", "--n-list", "5000"]);
    assert_eq!(code, EXIT_OK);
    let row = &rows(&out)[0];
    let log10: f64 = row[4].parse().unwrap();
    assert!(log10.is_finite() && log10 > 308.0);
    assert!(row[3].contains('e'));
}

#[test]
fn threshold_json() {
    let (code, out, _) = in_process(&["threshold", "--alpha", "0.1"]);
    assert_eq!(code, EXIT_OK);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!((v["p_c"].as_f64().unwrap() - 0.431).abs() < 1e-3);

    let (_, out, _) = in_process(&["threshold", "--alpha", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    assert!(v["p_c"].is_null());
    assert!((v["r"].as_f64().unwrap() - 0.2071).abs() < 1e-4);

    let (_, out, _) = in_process(&["threshold", "--alpha", "0.1111111111111111", "--p", "0.5"]);
    let v: serde_json::Value = serde_json::from_str(&out).unwrap();
    for key in ["x_low", "x_high", "x_star"] {
        assert!((v[key].as_f64().unwrap() - 0.25).abs() < 1e-12, "{key}");
    }
    assert_eq!(v["regime"], "Unclassified");
}

#[test]
fn out_flag_writes_file() {
    let path = std::env::temp_dir().join(format!("twochoice-cli-{}.csv", std::process::id()));
    let path_str = path.to_str().unwrap();
    let (code, out, _) = in_process(&["exact", "--alpha", "0.2", "--p", "0", "--n-list", "50", "--out", path_str]);
    assert_eq!(code, EXIT_OK);
    assert!(out.is_empty());
    let written = std::fs::read_to_string(&path).unwrap();
    std::fs::remove_file(&path).unwrap();
    assert!(written.contains("50,0.2,0,567.48336"));
}

#[test]
fn jobs_from_environment_do_not_change_output() {
    let args = ["simulate", "--graph", "er", "--alpha", "0.3", "--p", "0.1", "--n-list", "40,80", "--trials", "30", "--seed", "5"];
    let with_env = |jobs: &str| {
        Command::new(env!("CARGO_BIN_EXE_twochoice"))
            .args(args)
            .env("TWOCHOICE_JOBS", jobs)
            .output()
            .unwrap()
    };
    let a = with_env("1");
    let b = with_env("3");
    assert_eq!(a.status.code(), Some(EXIT_OK));
    assert_eq!(a.stdout, b.stdout);
    assert!(String::from_utf8_lossy(&b.stderr).contains("jobs=3"));
}

#[test]
fn reuse_graph_is_recorded() {
    let (code, _, err) = in_process(&[
        "simulate", "--graph", "regular", "--d", "4", "--alpha", "0.3", "--p", "0", "--n-list", "20",
        "--trials", "5", "--reuse-graph",
    ]);
    assert_eq!(code, EXIT_OK);
    assert!(err.contains("regenerate_graph_per_trial=false"));
}
