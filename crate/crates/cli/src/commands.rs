use bqz::ztransform::{convolve, eval_truncated, CatalogEntry, EvalOptions, RowFiveForm, CATALOG_NAMES};
use bqz::{deconvolve_geometric, Biquaternion, ComplexScalar, Sequence};
use serde_json::{json, Map, Value};

use crate::error::CliError;
use crate::report::{bq_json, bq_list, pass_mark, Report};
use crate::sample::{catalog_instance, point_outside, row_rng};
use crate::spec::{self, DeconvolutionProblem, ParamsSpec, Problem, RecurrenceProblem};

/// Round-trip tolerance for re-convolving a deconvolution result.
pub const ROUND_TRIP_TOL: f64 = 1e-10;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Settings {
    pub eps: f64,
    pub tol: f64,
    pub max_terms: usize,
    pub seed: u64,
    pub as_printed: bool,
}

impl Default for Settings {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            tol: 1e-9,
            max_terms: 10_000,
            seed: 0,
            as_printed: false,
        }
    }
}

impl Settings {
    pub fn eval_options(&self) -> EvalOptions {
        EvalOptions::new(self.eps, self.max_terms)
    }

    pub fn row_five(&self) -> RowFiveForm {
        if self.as_printed {
            RowFiveForm::AsPrinted
        } else {
            RowFiveForm::Corrected
        }
    }

    fn record(&self, report: &mut Report) {
        report.tolerance("eps", self.eps);
        report.tolerance("tol", self.tol);
        report.input("max_terms", self.max_terms);
        report.input("as_printed", self.as_printed);
    }
}

pub fn rel_err(got: &Biquaternion, expected: &Biquaternion) -> f64 {
    (*got - *expected).magnitude() / expected.magnitude().max(1.0)
}

fn complex_json(x: ComplexScalar) -> Value {
    json!([x.re, x.im])
}

// ---------------------------------------------------------------- eval

pub fn cmd_eval(name: &str, params: &ParamsSpec, x: &str, settings: &Settings) -> Report {
    let mut report = Report::new("eval");
    report.input("sequence", name);
    report.input("x", x);
    for (key, value) in [("p", &params.p), ("q", &params.q)] {
        if let Some(v) = value {
            report.input(key, v.as_str());
        }
    }
    if let Some(m) = params.m {
        report.input("m", m);
    }
    settings.record(&mut report);
    if let Err(e) = eval_into(&mut report, name, params, x, settings) {
        report.fail_with(&e);
    }
    report
}

fn eval_into(
    report: &mut Report,
    name: &str,
    params: &ParamsSpec,
    x: &str,
    settings: &Settings,
) -> Result<(), CliError> {
    let x = spec::literal("x", x)?;
    let params = spec::catalog_params("params", params, settings.row_five())?;
    let entry = CatalogEntry::by_name(name, &params)?;
    report.result("roc_radius", entry.roc_radius());
    let closed = entry.eval(&x)?;
    report.result("closed_form", bq_json(&closed));
    let series = eval_truncated(&entry.sequence(), &x, settings.eval_options())?;
    let deviation = (closed - series.value).magnitude();
    let bound = series.tail_bound.value();
    report.result(
        "series",
        json!({
            "value": bq_json(&series.value),
            "terms_used": series.terms_used,
            "tail_bound": bound,
        }),
    );
    report.result("deviation", deviation);
    let ok = bound.is_some_and(|b| deviation <= b + settings.tol);
    report.line(format!("{name} at {}: {}", bqz::format_literal(&x), bqz::format_literal(&closed)));
    report.line(format!(
        "series {} ({} terms, tail {}), deviation {deviation:.3e}: {}",
        bqz::format_literal(&series.value),
        series.terms_used,
        bound.map_or("unbounded".to_string(), |b| format!("{b:.3e}")),
        pass_mark(ok)
    ));
    if !ok {
        report.mark_failed();
    }
    Ok(())
}

// ---------------------------------------------------------------- verify-catalog

#[derive(Debug, Clone, PartialEq)]
pub struct RowCheck {
    pub name: String,
    pub points: usize,
    pub failures: usize,
    pub max_deviation: f64,
    /// Largest `deviation - tail_bound` over the points.
    pub worst_margin: f64,
    pub degenerate_points: usize,
    pub errors: Vec<String>,
}

impl RowCheck {
    pub fn passed(&self) -> bool {
        self.failures == 0
    }

    fn to_json(&self) -> Value {
        json!({
            "name": self.name,
            "points": self.points,
            "failures": self.failures,
            "max_deviation": self.max_deviation,
            "worst_margin": self.worst_margin,
            "degenerate_points": self.degenerate_points,
            "errors": self.errors,
            "pass": self.passed(),
        })
    }
}

/// Compares closed form and truncated series for `points` random instances
/// of a catalog row. A point passes when `|closed - series| <= tail + tol`.
pub fn check_catalog_row(
    name: &str,
    points: usize,
    seed: u64,
    tol: f64,
    opts: EvalOptions,
    row_five: RowFiveForm,
) -> RowCheck {
    let row = CATALOG_NAMES.iter().position(|n| *n == name).unwrap_or(usize::MAX);
    let mut rng = row_rng(seed, row);
    let mut check = RowCheck {
        name: name.to_string(),
        points,
        failures: 0,
        max_deviation: 0.0,
        worst_margin: f64::NEG_INFINITY,
        degenerate_points: 0,
        errors: Vec::new(),
    };
    for draw in 0..points {
        let outcome = catalog_instance(&mut rng, name, draw, row_five).and_then(|entry| {
            let x = Biquaternion::scalar(point_outside(&mut rng, entry.roc_radius()));
            if let bqz::ztransform::CatalogKind::CosQn { q } | bqz::ztransform::CatalogKind::SinQn { q } =
                entry.kind()
            {
                if q.vec_sign().is_none() {
                    check.degenerate_points += 1;
                }
            }
            let closed = entry.eval(&x)?;
            let series = eval_truncated(&entry.sequence(), &x, opts)?;
            Ok(((closed - series.value).magnitude(), series.tail_bound.value()))
        });
        match outcome {
            Ok((deviation, Some(bound))) => {
                check.max_deviation = check.max_deviation.max(deviation);
                check.worst_margin = check.worst_margin.max(deviation - bound);
                if deviation.is_nan() || deviation > bound + tol {
                    check.failures += 1;
                }
            }
            Ok((deviation, None)) => {
                check.max_deviation = check.max_deviation.max(deviation);
                check.failures += 1;
                check.errors.push(format!("point {draw}: tail not certified"));
            }
            Err(e) => {
                check.failures += 1;
                check.errors.push(format!("point {draw}: {}", e.name()));
            }
        }
    }
    check
}

pub fn cmd_verify_catalog(rows: Option<&[String]>, points: usize, settings: &Settings) -> Report {
    let mut report = Report::new("verify-catalog");
    let names: Vec<String> = match rows {
        Some(r) if !r.is_empty() => r.to_vec(),
        _ => CATALOG_NAMES.iter().map(|s| s.to_string()).collect(),
    };
    report.input("rows", names.clone());
    report.input("points_per_row", points);
    report.input("seed", settings.seed);
    settings.record(&mut report);
    if let Some(bad) = names.iter().find(|n| !CATALOG_NAMES.contains(&n.as_str())) {
        report.fail_with(&CliError::Spec(format!("unknown catalog row {bad:?}")));
        return report;
    }
    let checks: Vec<RowCheck> = names
        .iter()
        .map(|n| {
            check_catalog_row(n, points, settings.seed, settings.tol, settings.eval_options(), settings.row_five())
        })
        .collect();
    for c in &checks {
        report.line(format!(
            "{:<14} {} max deviation {:.3e} ({} of {} points failed)",
            c.name,
            pass_mark(c.passed()),
            c.max_deviation,
            c.failures,
            c.points
        ));
    }
    if checks.iter().any(|c| !c.passed()) {
        report.mark_failed();
    }
    report.result("rows", Value::Array(checks.iter().map(RowCheck::to_json).collect()));
    report
}

// ---------------------------------------------------------------- recurrence

/// Outcome of the checks run against one spec.
pub struct ProblemCheck {
    pub results: Map<String, Value>,
    pub lines: Vec<String>,
    pub passed: bool,
    pub errors: Vec<CliError>,
}

impl ProblemCheck {
    fn new() -> Self {
        Self {
            results: Map::new(),
            lines: Vec::new(),
            passed: true,
            errors: Vec::new(),
        }
    }

    fn require(&mut self, ok: bool) {
        self.passed &= ok;
    }

    fn error(&mut self, err: CliError) {
        self.lines.push(format!("error: {err} ({})", err.name()));
        self.passed = false;
        self.errors.push(err);
    }
}

/// Closed-form transform supplied by the caller for extra comparison.
pub type StatedTransform<'a> = &'a dyn Fn(&Biquaternion) -> bqz::Result<Biquaternion>;

fn transform_sample_json(
    x: ComplexScalar,
    computed: &Biquaternion,
    reference: &Biquaternion,
    label: &str,
    tol: f64,
) -> (Value, bool) {
    let err = rel_err(computed, reference);
    let ok = err <= tol;
    let mut entry = json!({
        "x": complex_json(x),
        "value": bq_json(computed),
        "relative_error": err,
        "pass": ok,
    });
    entry[label] = bq_json(reference);
    (entry, ok)
}

pub fn check_recurrence(
    problem: &RecurrenceProblem,
    horizon: usize,
    samples: &[ComplexScalar],
    stated: Option<StatedTransform>,
    settings: &Settings,
) -> ProblemCheck {
    let mut out = ProblemCheck::new();
    let rec = &problem.rec;
    let terms = rec.iterate(horizon + 1);
    out.results.insert("terms".into(), bq_list(&terms));

    if let Some(candidate) = &problem.candidate {
        let v = rec.verify_closed_form(candidate, horizon, settings.tol);
        let iterate_err = terms
            .iter()
            .enumerate()
            .map(|(n, t)| rel_err(t, &candidate.term(n)))
            .fold(0.0, f64::max);
        let ok = v.passed() && iterate_err <= settings.tol;
        out.results.insert(
            "verification".into(),
            json!({
                "max_abs_error": v.max_abs_error,
                "max_rel_error": v.max_rel_error,
                "first_failure_index": v.first_failure_index,
                "n_checked": v.n_checked,
                "tolerance": v.tolerance,
                "max_iterate_error": iterate_err,
                "pass": ok,
            }),
        );
        out.lines.push(format!(
            "candidate over n <= {horizon}: identity error {:.3e}, iterate error {iterate_err:.3e}{}: {}",
            v.max_rel_error,
            v.first_failure_index.map_or(String::new(), |i| format!(", first failure at {i}")),
            pass_mark(ok)
        ));
        out.require(ok);
    }

    let seq = rec.sequence();
    let mut samples_json = Vec::new();
    for &x in samples {
        let computed = match rec.transform_value(x, settings.eval_options()) {
            Ok(v) => v,
            Err(e) => {
                out.error(e.into());
                continue;
            }
        };
        let series = match eval_truncated(&seq, &Biquaternion::scalar(x), settings.eval_options()) {
            Ok(s) => s.value,
            Err(e) => {
                out.error(e.into());
                continue;
            }
        };
        let (mut entry, mut ok) = transform_sample_json(x, &computed, &series, "series", settings.tol);
        if let Some(f) = stated {
            match f(&Biquaternion::scalar(x)) {
                Ok(expected) => {
                    let err = rel_err(&computed, &expected);
                    entry["stated"] = bq_json(&expected);
                    entry["stated_relative_error"] = json!(err);
                    ok &= err <= settings.tol;
                    entry["pass"] = json!(ok);
                }
                Err(e) => out.error(e.into()),
            }
        }
        out.lines.push(format!(
            "transform at {}: {} {}",
            bqz::format_literal(&Biquaternion::scalar(x)),
            bqz::format_literal(&computed),
            pass_mark(ok)
        ));
        out.require(ok);
        samples_json.push(entry);
    }
    out.results.insert("transforms".into(), Value::Array(samples_json));
    out
}

pub fn check_deconvolution(
    problem: &DeconvolutionProblem,
    horizon: usize,
    samples: &[ComplexScalar],
    stated: Option<StatedTransform>,
    settings: &Settings,
) -> ProblemCheck {
    let mut out = ProblemCheck::new();
    let target = problem.target.sequence();
    let f = deconvolve_geometric(&target, problem.kernel);
    let terms = f.prefix(horizon + 1);
    out.results.insert("terms".into(), bq_list(&terms));

    if let Some(candidate) = &problem.candidate {
        let err = (0..=horizon)
            .map(|t| rel_err(&terms[t], &candidate.term(t)))
            .fold(0.0, f64::max);
        let ok = err <= settings.tol;
        out.results.insert("candidate_error".into(), json!(err));
        out.lines.push(format!("candidate over t <= {horizon}: error {err:.3e}: {}", pass_mark(ok)));
        out.require(ok);
    }

    let back = convolve(&Sequence::geometric(problem.kernel), &f);
    let round_trip = (0..=horizon)
        .map(|t| rel_err(&back.term(t), &target.term(t)))
        .fold(0.0, f64::max);
    let ok = round_trip <= ROUND_TRIP_TOL;
    out.results.insert("round_trip_error".into(), json!(round_trip));
    out.lines.push(format!("convolution round trip: error {round_trip:.3e}: {}", pass_mark(ok)));
    out.require(ok);

    let mut samples_json = Vec::new();
    for &x in samples {
        let xq = Biquaternion::scalar(x);
        let closed = problem.target.eval(&xq).and_then(|tx| {
            let x_inv = xq.inverse()?;
            Ok((Biquaternion::ONE - problem.kernel * x_inv) * tx)
        });
        let series = eval_truncated(&f.clone().with_radius_hint(problem.target.roc_radius()), &xq, settings.eval_options());
        let (closed, series) = match (closed, series) {
            (Ok(c), Ok(s)) => (c, s.value),
            (Err(e), _) | (_, Err(e)) => {
                out.error(e.into());
                continue;
            }
        };
        let (mut entry, mut ok) = transform_sample_json(x, &series, &closed, "closed_form", settings.tol);
        if let Some(g) = stated {
            match g(&xq) {
                Ok(expected) => {
                    let err = rel_err(&series, &expected);
                    entry["stated"] = bq_json(&expected);
                    entry["stated_relative_error"] = json!(err);
                    ok &= err <= settings.tol;
                    entry["pass"] = json!(ok);
                }
                Err(e) => out.error(e.into()),
            }
        }
        out.lines.push(format!(
            "transform at {}: {} {}",
            bqz::format_literal(&xq),
            bqz::format_literal(&series),
            pass_mark(ok)
        ));
        out.require(ok);
        samples_json.push(entry);
    }
    out.results.insert("transforms".into(), Value::Array(samples_json));
    out
}

pub fn cmd_recurrence(source: &str, n: Option<usize>, xs: &[String], settings: &Settings) -> Report {
    let mut report = Report::new("recurrence");
    report.input("spec", source);
    if let Some(n) = n {
        report.input("n", n);
    }
    report.input("x", xs.to_vec());
    settings.record(&mut report);
    if let Err(e) = recurrence_into(&mut report, source, n, xs, settings) {
        report.fail_with(&e);
    }
    report
}

fn recurrence_into(
    report: &mut Report,
    source: &str,
    n: Option<usize>,
    xs: &[String],
    settings: &Settings,
) -> Result<(), CliError> {
    let problem = spec::load(source, settings.as_printed)?;
    let xs: Vec<ComplexScalar> = xs
        .iter()
        .enumerate()
        .map(|(i, t)| spec::complex_literal(&format!("x[{i}]"), t))
        .collect::<Result<_, _>>()?;
    report.result("name", problem.name());
    let check = match &problem {
        Problem::Recurrence(p) => {
            report.result("kind", "recurrence");
            report.result("order", p.rec.order());
            let samples = if xs.is_empty() { &p.samples } else { &xs };
            check_recurrence(p, n.unwrap_or(p.horizon), samples, None, settings)
        }
        Problem::Deconvolution(p) => {
            report.result("kind", "deconvolution");
            let samples = if xs.is_empty() { &p.samples } else { &xs };
            check_deconvolution(p, n.unwrap_or(p.horizon), samples, None, settings)
        }
    };
    absorb(report, check);
    Ok(())
}

fn absorb(report: &mut Report, check: ProblemCheck) {
    for (k, v) in check.results {
        report.result(&k, v);
    }
    for line in check.lines {
        report.line(line);
    }
    for e in &check.errors {
        report.record_error(e);
    }
    if !check.passed {
        report.mark_failed();
    }
}
