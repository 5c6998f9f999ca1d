use std::io::Write;
use std::process::{Command, Output};

fn bqz(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bqz")).args(args).output().expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn report(out: &Output) -> serde_json::Value {
    serde_json::from_slice(&out.stdout).expect("json report")
}

#[test]
fn eval_matches_closed_form() {
    let out = bqz(&["eval", "pow_p", "--p", "2i", "--x", "4", "--json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["pass"], true);
    let c = r["results"]["closed_form"]["components"].as_array().unwrap();
    assert!((c[0].as_f64().unwrap() - 0.8).abs() < 1e-12);
    assert!((c[2].as_f64().unwrap() - 0.4).abs() < 1e-12);
}

#[test]
fn eval_outside_region_is_domain_error() {
    let out = bqz(&["eval", "const_one", "--x", "0.5", "--json"]);
    assert_eq!(code(&out), 3);
    assert_eq!(report(&out)["errors"][0]["name"], "OutsideROC");
}

#[test]
fn malformed_literal_is_parse_error() {
    let out = bqz(&["eval", "pow_p", "--p", "1+2q", "--x", "4"]);
    assert_eq!(code(&out), 2);
    let out = bqz(&["eval", "no_such_row", "--x", "4"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn catalog_rows_and_printed_row() {
    let out = bqz(&["verify-catalog", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["rows"].as_array().unwrap().len(), 10);

    let out = bqz(&["verify-catalog", "--rows", "const_one", "--json"]);
    assert_eq!(code(&out), 0);
    assert_eq!(report(&out)["results"]["rows"].as_array().unwrap().len(), 1);

    let out = bqz(&["verify-catalog", "--rows", "n_pow_p", "--as-printed"]);
    assert_eq!(code(&out), 1);
}

#[test]
fn bundled_recurrences() {
    for name in ["example1", "example2", "example3", "example4", "example5"] {
        let out = bqz(&["recurrence", &format!("bundled:{name}"), "--json"]);
        assert_eq!(code(&out), 0, "{name}: {}", String::from_utf8_lossy(&out.stdout));
    }
    let out = bqz(&["recurrence", "bundled:example2", "--as-printed", "--json"]);
    assert_eq!(code(&out), 1);
    assert_eq!(report(&out)["results"]["verification"]["first_failure_index"], 0);
}

#[test]
fn perturbed_candidate_fails_with_index() {
    let text = include_str!("../specs/example1.json").replace(
        r#"{ "catalog": "pow_p", "params": { "p": "i+j" } }"#,
        r#"{ "catalog": "pow_p", "params": { "p": "i+j" } }, { "catalog": "const_one" }"#,
    );
    let mut file = tempfile::NamedTempFile::new().unwrap();
    file.write_all(text.as_bytes()).unwrap();
    let out = bqz(&["recurrence", file.path().to_str().unwrap(), "--json"]);
    assert_eq!(code(&out), 1);
    let idx = report(&out)["results"]["verification"]["first_failure_index"].as_u64();
    assert!(matches!(idx, Some(0) | Some(1)));
}

#[test]
fn singular_leading_coefficient_is_domain_error() {
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, r#"{{"kind":"recurrence","order":1,"coeffs":["1","1+Ik"],"initial":["1"]}}"#).unwrap();
    let out = bqz(&["recurrence", file.path().to_str().unwrap()]);
    assert_eq!(code(&out), 3);
    let out = bqz(&["recurrence", "/nonexistent/spec.json"]);
    assert_eq!(code(&out), 2);
}

#[test]
fn golden_suite_passes_and_flags_printed_forms() {
    let out = bqz(&["paper-suite", "--json"]);
    assert_eq!(code(&out), 0);
    let r = report(&out);
    assert_eq!(r["results"]["passed"], 6);
    let out = bqz(&["paper-suite", "--as-printed", "--json"]);
    assert_eq!(code(&out), 1);
    let failing: Vec<_> = report(&out)["results"]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["pass"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failing, ["example2", "example4"]);
}

#[test]
fn reports_are_byte_identical() {
    for args in [
        &["verify-catalog", "--seed", "11", "--json"][..],
        &["paper-suite", "--json"][..],
        &["recurrence", "bundled:example4", "--x", "6", "--json"][..],
    ] {
        let a = bqz(args);
        let b = bqz(args);
        assert_eq!(a.stdout, b.stdout, "{args:?}");
    }
}
