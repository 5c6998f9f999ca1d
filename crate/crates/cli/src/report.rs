//! Deterministic JSON reports.
//!
//! Object keys are sorted (serde_json's default map is ordered), floats are
//! written in shortest round-trip form, and nothing time- or
//! environment-dependent is recorded, so identical invocations produce
//! identical bytes.

use bqz::{format_literal, Biquaternion};
use serde_json::{json, Map, Value};

use crate::error::CliError;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Status {
    Pass,
    Fail,
    ParseError,
    DomainError,
}

impl Status {
    pub fn exit_code(self) -> i32 {
        match self {
            Status::Pass => 0,
            Status::Fail => 1,
            Status::ParseError => 2,
            Status::DomainError => 3,
        }
    }
}

#[derive(Debug, Clone)]
pub struct Report {
    pub command: String,
    pub inputs: Map<String, Value>,
    pub tolerances: Map<String, Value>,
    pub results: Map<String, Value>,
    pub errors: Vec<Value>,
    /// Human-readable lines printed without `--json`.
    pub summary: Vec<String>,
    pub status: Status,
}

impl Report {
    pub fn new(command: &str) -> Self {
        Self {
            command: command.to_string(),
            inputs: Map::new(),
            tolerances: Map::new(),
            results: Map::new(),
            errors: Vec::new(),
            summary: Vec::new(),
            status: Status::Pass,
        }
    }

    pub fn input(&mut self, key: &str, value: impl Into<Value>) {
        self.inputs.insert(key.to_string(), value.into());
    }

    pub fn tolerance(&mut self, key: &str, value: f64) {
        self.tolerances.insert(key.to_string(), json!(value));
    }

    pub fn result(&mut self, key: &str, value: impl Into<Value>) {
        self.results.insert(key.to_string(), value.into());
    }

    pub fn line(&mut self, line: impl Into<String>) {
        self.summary.push(line.into());
    }

    /// Records an error and downgrades the status accordingly.
    pub fn fail_with(&mut self, err: &CliError) {
        self.line(format!("error: {} ({})", err, err.name()));
        self.record_error(err);
    }

    /// Like `fail_with` without the summary line.
    pub fn record_error(&mut self, err: &CliError) {
        self.errors.push(json!({ "name": err.name(), "message": err.to_string() }));
        self.status = worse(self.status, err.status());
    }

    pub fn mark_failed(&mut self) {
        self.status = worse(self.status, Status::Fail);
    }

    pub fn passed(&self) -> bool {
        self.status == Status::Pass
    }

    pub fn to_json(&self) -> Value {
        json!({
            "command": self.command,
            "version": env!("CARGO_PKG_VERSION"),
            "inputs": self.inputs,
            "tolerances": self.tolerances,
            "results": self.results,
            "errors": self.errors,
            "pass": self.passed(),
            "exit_code": self.status.exit_code(),
        })
    }

    pub fn to_json_string(&self) -> String {
        serde_json::to_string_pretty(&self.to_json()).expect("report serializes")
    }

    pub fn to_text(&self) -> String {
        let mut out = self.summary.join("\n");
        out.push_str(&format!(
            "\n{}: {}\n",
            self.command,
            if self.passed() { "PASS" } else { "FAIL" }
        ));
        out
    }
}

/// Domain and parse errors dominate verification failures.
fn worse(a: Status, b: Status) -> Status {
    let rank = |s: Status| match s {
        Status::Pass => 0,
        Status::Fail => 1,
        Status::DomainError => 2,
        Status::ParseError => 3,
    };
    if rank(b) > rank(a) {
        b
    } else {
        a
    }
}

/// A biquaternion as both a literal and its eight real components.
pub fn bq_json(v: &Biquaternion) -> Value {
    json!({ "literal": format_literal(v), "components": v.to_components() })
}

pub fn bq_list(vs: &[Biquaternion]) -> Value {
    Value::Array(vs.iter().map(bq_json).collect())
}

pub fn pass_mark(ok: bool) -> &'static str {
    if ok {
        "PASS"
    } else {
        "FAIL"
    }
}
