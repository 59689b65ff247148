use std::process::{Command, Output};

use brjuno_cli::validate_report;
use serde_json::Value;

fn brjuno(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_brjuno")).args(args).output().unwrap()
}

fn report(args: &[&str]) -> (i32, Value) {
    let out = brjuno(args);
    let v: Value = serde_json::from_slice(&out.stdout).unwrap_or_else(|e| panic!("{args:?}: {e}"));
    validate_report(&v).unwrap();
    (out.status.code().unwrap(), v)
}

fn f(v: &Value) -> f64 {
    v.as_str().unwrap().parse().unwrap()
}

#[test]
fn omega_golden_matches_brute_force() {
    let (code, v) = report(&["omega", "--point", "golden", "--m", "64", "--dim", "1"]);
    assert_eq!(code, 0);
    let g = (5f64.sqrt() - 1.0) / 2.0;
    let (mut best, mut arg) = (f64::MAX, (0, 0));
    for k in 1..=64i64 {
        let p = (k as f64 * g).round() as i64;
        let d = (k as f64 * g - p as f64).abs();
        if d < best {
            best = d;
            arg = (k, p);
        }
    }
    let r = &v["result"];
    assert!((f(&r["value"]) - best).abs() < 1e-12 * best.max(1e-300) * 1e3);
    assert_eq!(r["witness"]["k"][0], arg.0.to_string());
    assert_eq!(r["witness"]["p"], arg.1.to_string());
    assert_eq!(r["resonant"], false);
}

#[test]
fn resonant_point_exits_two_with_witness() {
    let (code, v) = report(&["brjuno", "--point", "1/2", "--depth", "4"]);
    assert_eq!(code, 2);
    let w = &v["diagnostics"]["witnesses"][0];
    assert_eq!(w["k"], serde_json::json!(["2"]));
    assert_eq!(w["p"], "1");
    assert_eq!(v["result"]["status"], "resonant");
}

#[test]
fn resonance_raised_inside_a_command_still_writes_report() {
    let (code, v) = report(&["brjuno", "--point", "1/3+1/7i,2/9", "--mode", "sandwich", "--depth", "6"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["status"], "resonant");
    assert_eq!(v["diagnostics"]["witnesses"][0]["k"], serde_json::json!(["0", "9"]));
}

#[test]
fn lemma22_example() {
    let (code, v) = report(&["lemma22", "--n", "2", "--sigma", "2", "--a", "1.831e-2", "--eta", "0.3421"]);
    assert_eq!(code, 0);
    let r = &v["result"];
    let cf = f(&r["closed_form"]);
    // the inputs are e^{-4} and (e^{-2} - e^{-4})^{1/2} rounded to four digits
    assert!((cf - 28.0 / 3.0).abs() / (28.0 / 3.0) < 1e-3, "{cf}");
    assert!((f(&r["quadrature"]) - cf).abs() / cf < 1e-6);
    assert_eq!(r["within_bounds"], true);
}

#[test]
fn argument_errors_exit_one() {
    for args in [
        vec!["omega", "--point", "3/x", "--m", "4"],
        vec!["omega", "--point", "1/3", "--m", "0"],
        vec!["omega", "--point", "1/3"],
        vec!["frobnicate"],
        vec!["lemma22", "--n", "2", "--sigma", "2", "--a", "0.5", "--eta", "0.1"],
        vec!["potential", "--point", "golden", "--dim", "2", "--center", "1/4,1/3", "--radius", "0.1"],
        vec!["omega", "--point", "1/3", "--m", "4", "--precision", "8"],
    ] {
        let out = brjuno(&args);
        assert_eq!(out.status.code(), Some(1), "{args:?}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn help_and_version_exit_zero() {
    assert_eq!(brjuno(&["--help"]).status.code(), Some(0));
    assert_eq!(brjuno(&["--version"]).status.code(), Some(0));
    assert_eq!(brjuno(&["potential", "--help"]).status.code(), Some(0));
}

#[test]
fn every_command_produces_a_valid_report() {
    let cases: &[&[&str]] = &[
        &["omega", "--point", "1/2+i", "--m", "8", "--capital"],
        &["brjuno", "--point", "golden", "--dim", "2", "--mode", "plateau", "--depth", "8"],
        &["brjuno", "--point", "golden", "--dim", "2", "--mode", "holder", "--depth", "8"],
        &["brjuno", "--point", "golden", "--dim", "2", "--mode", "p-range", "--samples", "20"],
        &["cf", "--point", "nonbrjuno", "--depth", "6"],
        &["cf", "--point", "nonbrjuno:depth=3"],
        &["series", "--point", "golden", "--depth", "20"],
        &["equiv", "--samples", "200", "--alpha", "0.001", "--r", "-0.002"],
        &["energy", "--points", "1/4,1/5;1/3,1/7", "--dim", "2", "--sigma", "3"],
    ];
    for c in cases {
        let (code, _) = report(c);
        assert_eq!(code, 0, "{c:?}");
    }
}

#[test]
fn non_brjuno_truncation_is_the_exact_convergent() {
    let (_, v) = report(&["cf", "--point", "nonbrjuno:depth=3"]);
    assert_eq!(v["result"]["quotients"], serde_json::json!(["1", "2", "8"]));
    assert_eq!(v["result"]["convergents"][2], serde_json::json!({ "p": "17", "q": "25" }));
    assert_eq!(v["result"]["terminating"], true);
}

#[test]
fn single_atom_energy_is_infinite() {
    let (code, v) = report(&["energy", "--points", "1/4,1/5", "--dim", "2", "--sigma", "3"]);
    assert_eq!(code, 2);
    assert_eq!(v["result"]["energy"], "inf");
}

#[test]
fn csv_has_header_and_monotone_depth() {
    for args in [
        vec!["brjuno", "--point", "1/3+1/97i,5/101+1/89i", "--mode", "sandwich", "--depth", "8", "--format", "csv"],
        vec!["series", "--point", "golden", "--depth", "15", "--format", "csv"],
        vec!["hausdorff", "--k", "1,1", "--center", "0,0", "--radius", "0.5", "--s-max", "9", "--format", "csv"],
    ] {
        let out = brjuno(&args);
        assert_eq!(out.status.code(), Some(0));
        let text = String::from_utf8(out.stdout).unwrap();
        let mut lines = text.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        assert!(header.iter().all(|h| h.parse::<f64>().is_err()), "{header:?}");
        let first: Vec<i64> = lines.map(|l| l.split(',').next().unwrap().parse().unwrap()).collect();
        assert!(first.len() > 3);
        assert!(first.windows(2).all(|w| w[1] > w[0]));
    }
}

#[test]
fn out_file_matches_stdout() {
    let path = std::env::temp_dir().join(format!("brjuno-cli-test-{}.json", std::process::id()));
    let args = ["cf", "--point", "pi-3", "--depth", "8"];
    let mut with_out: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap().to_string();
    with_out.extend(["--out", &p]);
    assert_eq!(brjuno(&with_out).status.code(), Some(0));
    let from_file: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    std::fs::remove_file(&path).unwrap();
    let (_, v) = report(&args);
    assert_eq!(brjuno_cli::without_timing(&from_file), brjuno_cli::without_timing(&v));
    assert_eq!(from_file["result"]["quotients"], serde_json::json!(["7", "15", "1", "292", "1", "1", "1", "2"]));
}
