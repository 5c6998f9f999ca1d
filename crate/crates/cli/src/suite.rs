//! The worked-example golden suite.

use bqz::ztransform::CatalogEntry;
use bqz::{parse_literal, Biquaternion, Error};
use serde_json::{json, Map, Value};

use crate::commands::{check_deconvolution, check_recurrence, rel_err, ProblemCheck, Settings};
use crate::error::CliError;
use crate::report::{pass_mark, Report};
use crate::spec::{self, Problem};

pub const SUITE_CHECKS: [&str; 6] = [
    "example1",
    "example2",
    "example3",
    "example4",
    "example5",
    "zero_divisor_powers",
];

fn lit(s: &str) -> Biquaternion {
    parse_literal(s).expect("suite literal")
}

/// `(1 - p x^-1)^-1`.
fn geometric_transform(p: &str, x: &Biquaternion) -> bqz::Result<Biquaternion> {
    (Biquaternion::ONE - lit(p) * x.inverse()?).inverse()
}

/// The transform each worked example arrives at, written out independently
/// of the recurrence solver.
fn stated_transform(name: &str, x: &Biquaternion) -> bqz::Result<Biquaternion> {
    let one = Biquaternion::ONE;
    match name {
        "example1" => geometric_transform("i+j", x),
        "example2" => geometric_transform("Ij", x),
        "example3" => geometric_transform("Ii+I", x),
        "example4" => {
            let x_inv = x.inverse()?;
            let xm1_inv = (*x - one).inverse()?;
            let forcing = *x * 2.0 * xm1_inv
                + (one - lit("Ik")) * 2.0 * (one - lit("Ik") * x_inv).inverse()?
                - (one - lit("Ik+1") * x_inv).inverse()?;
            Ok(forcing * xm1_inv.pow(2))
        }
        "example5" => {
            let x_inv = x.inverse()?;
            Ok((one - lit("3j") * x_inv) * (one - lit("2i") * x_inv).inverse()?)
        }
        other => Err(Error::InvalidParams(format!("no stated transform for {other}"))),
    }
}

/// `(x - 1)^-2` read off the table as `x^-1 X[n](x)` with `X[n]` the
/// `n p^n` row at `p = 1`, the expansion the forced example relies on.
fn table_expansion_check(check: &mut ProblemCheck, samples: &[bqz::ComplexScalar], settings: &Settings) {
    let row = CatalogEntry::n_pow_p_with(Biquaternion::ONE, settings.row_five());
    let mut worst: f64 = 0.0;
    for &x in samples {
        let xq = Biquaternion::scalar(x);
        let from_table = row.eval(&xq).and_then(|t| Ok(xq.inverse()? * t));
        let direct = (xq - Biquaternion::ONE).inverse().map(|v| v.pow(2));
        match (from_table, direct) {
            (Ok(a), Ok(b)) => worst = worst.max(rel_err(&a, &b)),
            (Err(e), _) | (_, Err(e)) => {
                check.errors.push(e.into());
                worst = f64::INFINITY;
            }
        }
    }
    let ok = worst <= settings.tol;
    check.results.insert("table_expansion_error".into(), json!(worst));
    check.lines.push(format!("(x-1)^-2 from the n p^n row: error {worst:.3e}: {}", pass_mark(ok)));
    check.passed &= ok;
}

fn run_example(name: &str, settings: &Settings) -> Result<ProblemCheck, CliError> {
    let stated = |x: &Biquaternion| stated_transform(name, x);
    let problem = spec::load(&format!("bundled:{name}"), settings.as_printed)?;
    Ok(match &problem {
        Problem::Recurrence(p) => {
            let mut check = check_recurrence(p, p.horizon, &p.samples, Some(&stated), settings);
            if name == "example4" {
                table_expansion_check(&mut check, &p.samples, settings);
            }
            check
        }
        Problem::Deconvolution(p) => check_deconvolution(p, p.horizon, &p.samples, Some(&stated), settings),
    })
}

fn zero_divisor_check() -> ProblemCheck {
    let mut check = ProblemCheck {
        results: Map::new(),
        lines: Vec::new(),
        passed: true,
        errors: Vec::new(),
    };
    let a = lit("1+Ik");
    let mut worst: f64 = 0.0;
    for n in 1..=20u64 {
        let expected = a * 2f64.powi(n as i32 - 1);
        for (g, e) in a.pow(n).to_components().iter().zip(expected.to_components()) {
            worst = worst.max((g - e).abs() / e.abs().max(1.0));
        }
    }
    let powers_ok = worst <= 1e-12;
    let inverse = a.inverse();
    let rejects = matches!(inverse, Err(Error::ZeroDivisor { .. }));
    check.results.insert("max_component_error".into(), json!(worst));
    check.results.insert(
        "inverse".into(),
        json!(match inverse {
            Ok(_) => "invertible".to_string(),
            Err(e) => e.name().to_string(),
        }),
    );
    check.lines.push(format!("(1+Ik)^n = 2^(n-1)(1+Ik), n = 1..20: error {worst:.3e}: {}", pass_mark(powers_ok)));
    check.lines.push(format!("inverse(1+Ik) rejected as zero divisor: {}", pass_mark(rejects)));
    check.passed = powers_ok && rejects;
    check
}

/// Runs every worked example end to end plus the zero-divisor power identity.
pub fn cmd_golden_suite(settings: &Settings) -> Report {
    let mut report = Report::new("paper-suite");
    report.tolerance("eps", settings.eps);
    report.tolerance("tol", settings.tol);
    report.input("max_terms", settings.max_terms);
    report.input("as_printed", settings.as_printed);
    let mut checks = Vec::new();
    let mut passed = 0;
    for name in SUITE_CHECKS {
        let check = if name == "zero_divisor_powers" {
            zero_divisor_check()
        } else {
            match run_example(name, settings) {
                Ok(c) => c,
                Err(e) => ProblemCheck {
                    results: Map::new(),
                    lines: vec![format!("error: {e} ({})", e.name())],
                    passed: false,
                    errors: vec![e],
                },
            }
        };
        report.line(format!("[{}] {name}", pass_mark(check.passed)));
        for line in &check.lines {
            report.line(format!("    {line}"));
        }
        let mut entry = Map::new();
        entry.insert("name".into(), json!(name));
        entry.insert("pass".into(), json!(check.passed));
        entry.insert(
            "errors".into(),
            Value::Array(
                check
                    .errors
                    .iter()
                    .map(|e| json!({ "name": e.name(), "message": e.to_string() }))
                    .collect(),
            ),
        );
        for (k, v) in check.results {
            entry.insert(k, v);
        }
        checks.push(Value::Object(entry));
        if check.passed {
            passed += 1;
        } else {
            report.mark_failed();
        }
    }
    report.line(format!("{passed}/{} checks passed", SUITE_CHECKS.len()));
    report.result("checks", Value::Array(checks));
    report.result("passed", passed);
    report.result("total", SUITE_CHECKS.len());
    report
}
