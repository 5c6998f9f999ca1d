//! JSON problem specs: recurrences and geometric deconvolutions.

use bqz::ztransform::{CatalogEntry, CatalogParams, RowFiveForm};
use bqz::{parse_literal, Biquaternion, ComplexScalar, Forcing, LinearRecurrence, Sequence};
use serde::Deserialize;

use crate::error::CliError;

pub const DEFAULT_HORIZON: usize = 40;

/// Specs compiled into the binary, addressable as `bundled:<name>`.
pub const BUNDLED: [(&str, &str); 5] = [
    ("example1", include_str!("../specs/example1.json")),
    ("example2", include_str!("../specs/example2.json")),
    ("example3", include_str!("../specs/example3.json")),
    ("example4", include_str!("../specs/example4.json")),
    ("example5", include_str!("../specs/example5.json")),
];

#[derive(Debug, Clone, Default, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ParamsSpec {
    pub p: Option<String>,
    pub q: Option<String>,
    pub m: Option<u32>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ForcingSpec {
    pub catalog: String,
    #[serde(default)]
    pub params: ParamsSpec,
    pub right_coeff: Option<String>,
    pub right_coeffs: Option<Vec<String>>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SequenceSpec {
    pub catalog: String,
    #[serde(default)]
    pub params: ParamsSpec,
}

/// One additive term of a closed-form candidate.
#[derive(Debug, Clone, Deserialize)]
#[serde(untagged)]
pub enum TermSpec {
    /// `sum_k c_k n^k`.
    Poly { poly: Vec<String> },
    /// `coeff * g_{n - shift}`, zero for `n < shift`.
    Catalog {
        #[serde(default)]
        coeff: Option<String>,
        catalog: String,
        #[serde(default)]
        params: ParamsSpec,
        #[serde(default)]
        shift: usize,
    },
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct AsPrintedSpec {
    pub coeffs: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RecurrenceSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub order: usize,
    pub coeffs: Vec<String>,
    pub initial: Vec<String>,
    #[serde(default)]
    pub forcing: Vec<ForcingSpec>,
    pub as_printed: Option<AsPrintedSpec>,
    pub candidate: Option<Vec<TermSpec>>,
    pub horizon: Option<usize>,
    #[serde(default)]
    pub samples: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct DeconvolutionSpec {
    pub name: Option<String>,
    pub description: Option<String>,
    pub kernel: String,
    pub target: SequenceSpec,
    pub candidate: Option<Vec<TermSpec>>,
    pub horizon: Option<usize>,
    #[serde(default)]
    pub samples: Vec<String>,
}

#[derive(Debug, Clone, Deserialize)]
#[serde(tag = "kind", rename_all = "snake_case")]
pub enum SpecFile {
    Recurrence(RecurrenceSpec),
    Deconvolution(DeconvolutionSpec),
}

pub struct RecurrenceProblem {
    pub name: String,
    pub description: Option<String>,
    pub rec: LinearRecurrence,
    pub candidate: Option<Sequence>,
    pub horizon: usize,
    pub samples: Vec<ComplexScalar>,
}

pub struct DeconvolutionProblem {
    pub name: String,
    pub description: Option<String>,
    pub kernel: Biquaternion,
    pub target: CatalogEntry,
    pub candidate: Option<Sequence>,
    pub horizon: usize,
    pub samples: Vec<ComplexScalar>,
}

pub enum Problem {
    Recurrence(RecurrenceProblem),
    Deconvolution(DeconvolutionProblem),
}

impl Problem {
    pub fn name(&self) -> &str {
        match self {
            Problem::Recurrence(p) => &p.name,
            Problem::Deconvolution(p) => &p.name,
        }
    }
}

pub fn literal(field: &str, text: &str) -> Result<Biquaternion, CliError> {
    parse_literal(text).map_err(|source| CliError::Literal {
        field: field.to_string(),
        source,
    })
}

fn literals(field: &str, texts: &[String]) -> Result<Vec<Biquaternion>, CliError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| literal(&format!("{field}[{i}]"), t))
        .collect()
}

/// A literal that must be a complex scalar, e.g. an evaluation point.
pub fn complex_literal(field: &str, text: &str) -> Result<ComplexScalar, CliError> {
    let v = literal(field, text)?;
    if !v.is_scalar() {
        return Err(CliError::Spec(format!("{field}: {text:?} must be a complex scalar")));
    }
    Ok(v.w)
}

pub fn catalog_params(
    field: &str,
    params: &ParamsSpec,
    row_five: RowFiveForm,
) -> Result<CatalogParams, CliError> {
    Ok(CatalogParams {
        p: params.p.as_deref().map(|t| literal(&format!("{field}.p"), t)).transpose()?,
        q: params.q.as_deref().map(|t| literal(&format!("{field}.q"), t)).transpose()?,
        m: params.m,
        row_five,
    })
}

fn catalog_entry(field: &str, name: &str, params: &ParamsSpec, row_five: RowFiveForm) -> Result<CatalogEntry, CliError> {
    Ok(CatalogEntry::by_name(name, &catalog_params(field, params, row_five)?)?)
}

fn row_five(as_printed: bool) -> RowFiveForm {
    if as_printed {
        RowFiveForm::AsPrinted
    } else {
        RowFiveForm::Corrected
    }
}

enum BuiltTerm {
    Poly(Vec<Biquaternion>),
    Catalog { coeff: Biquaternion, entry: CatalogEntry, shift: usize },
}

impl BuiltTerm {
    fn at(&self, n: usize) -> Biquaternion {
        match self {
            BuiltTerm::Poly(cs) => {
                let nf = n as f64;
                cs.iter().rev().fold(Biquaternion::ZERO, |acc, c| acc * nf + *c)
            }
            BuiltTerm::Catalog { coeff, entry, shift } => {
                if n < *shift {
                    Biquaternion::ZERO
                } else {
                    *coeff * entry.term(n - shift)
                }
            }
        }
    }
}

pub fn candidate_sequence(terms: &[TermSpec], row: RowFiveForm) -> Result<Sequence, CliError> {
    let mut built = Vec::with_capacity(terms.len());
    for (i, t) in terms.iter().enumerate() {
        let field = format!("candidate[{i}]");
        built.push(match t {
            TermSpec::Poly { poly } => BuiltTerm::Poly(literals(&format!("{field}.poly"), poly)?),
            TermSpec::Catalog { coeff, catalog, params, shift } => BuiltTerm::Catalog {
                coeff: match coeff {
                    Some(c) => literal(&format!("{field}.coeff"), c)?,
                    None => Biquaternion::ONE,
                },
                entry: catalog_entry(&field, catalog, params, row)?,
                shift: *shift,
            },
        });
    }
    Ok(Sequence::new(move |n| built.iter().map(|t| t.at(n)).sum()))
}

fn samples(texts: &[String]) -> Result<Vec<ComplexScalar>, CliError> {
    texts
        .iter()
        .enumerate()
        .map(|(i, t)| complex_literal(&format!("samples[{i}]"), t))
        .collect()
}

impl RecurrenceSpec {
    pub fn build(&self, fallback_name: &str, as_printed: bool) -> Result<RecurrenceProblem, CliError> {
        let coeff_texts = match (&self.as_printed, as_printed) {
            (Some(printed), true) => &printed.coeffs,
            _ => &self.coeffs,
        };
        if coeff_texts.len() != self.order + 1 {
            return Err(CliError::Spec(format!(
                "order {} needs {} coefficients, got {}",
                self.order,
                self.order + 1,
                coeff_texts.len()
            )));
        }
        let coeffs = literals("coeffs", coeff_texts)?;
        let initial = literals("initial", &self.initial)?;
        let row = row_five(as_printed);
        let mut rec = LinearRecurrence::new(coeffs, initial)?;
        for (i, f) in self.forcing.iter().enumerate() {
            let field = format!("forcing[{i}]");
            let entry = catalog_entry(&field, &f.catalog, &f.params, row)?;
            let right = match (&f.right_coeff, &f.right_coeffs) {
                (Some(c), None) => vec![literal(&format!("{field}.right_coeff"), c)?],
                (None, Some(cs)) => literals(&format!("{field}.right_coeffs"), cs)?,
                _ => {
                    return Err(CliError::Spec(format!(
                        "{field}: give exactly one of right_coeff or right_coeffs"
                    )))
                }
            };
            rec = rec.with_forcing(Forcing::catalog(entry, right));
        }
        Ok(RecurrenceProblem {
            name: self.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            description: self.description.clone(),
            rec,
            candidate: self.candidate.as_deref().map(|c| candidate_sequence(c, row)).transpose()?,
            horizon: self.horizon.unwrap_or(DEFAULT_HORIZON),
            samples: samples(&self.samples)?,
        })
    }
}

impl DeconvolutionSpec {
    pub fn build(&self, fallback_name: &str, as_printed: bool) -> Result<DeconvolutionProblem, CliError> {
        let row = row_five(as_printed);
        let target = catalog_entry("target", &self.target.catalog, &self.target.params, row)?;
        Ok(DeconvolutionProblem {
            name: self.name.clone().unwrap_or_else(|| fallback_name.to_string()),
            description: self.description.clone(),
            kernel: literal("kernel", &self.kernel)?,
            target,
            candidate: self.candidate.as_deref().map(|c| candidate_sequence(c, row)).transpose()?,
            horizon: self.horizon.unwrap_or(30),
            samples: samples(&self.samples)?,
        })
    }
}

pub fn parse_spec(text: &str, name: &str, as_printed: bool) -> Result<Problem, CliError> {
    let spec: SpecFile = serde_json::from_str(text).map_err(|e| CliError::Spec(e.to_string()))?;
    Ok(match spec {
        SpecFile::Recurrence(r) => Problem::Recurrence(r.build(name, as_printed)?),
        SpecFile::Deconvolution(d) => Problem::Deconvolution(d.build(name, as_printed)?),
    })
}

/// Loads `bundled:<name>` from the compiled-in specs, anything else from disk.
pub fn load(source: &str, as_printed: bool) -> Result<Problem, CliError> {
    if let Some(name) = source.strip_prefix("bundled:") {
        let (_, text) = BUNDLED
            .iter()
            .find(|(n, _)| *n == name)
            .ok_or_else(|| CliError::Spec(format!("no bundled spec named {name:?}")))?;
        return parse_spec(text, name, as_printed);
    }
    let text = std::fs::read_to_string(source).map_err(|source_err| CliError::Io {
        path: source.to_string(),
        source: source_err,
    })?;
    let stem = std::path::Path::new(source)
        .file_stem()
        .and_then(|s| s.to_str())
        .unwrap_or("spec");
    parse_spec(&text, stem, as_printed)
}
