//! Right-coefficient linear recurrences
//!
//! ```text
//! sum_{m=0}^{M} f_{n+m} p_m = sum_k g_{n+k} q_k + sum_t h_{n+t} u_t + ...
//! ```
//!
//! Coefficients multiply the sequence terms on the right. Forward iteration
//! divides by `p_M` on the right, and the transform of the solution is found
//! at complex points by applying the advance rule to every shifted term.

use crate::biquat::{Biquaternion, ComplexScalar};
use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::ztransform::catalog::CatalogEntry;
use crate::ztransform::eval::{eval_truncated, roc_estimate, EvalOptions};

/// One inhomogeneous term `sum_k g_{n+k} q_k`.
#[derive(Debug, Clone)]
pub struct Forcing {
    pub sequence: Sequence,
    /// `q_0, q_1, ...`, each multiplying on the right.
    pub coeffs: Vec<Biquaternion>,
    /// Closed form for the transform of `g`, when `g` is a catalog sequence.
    pub transform: Option<CatalogEntry>,
}

impl Forcing {
    /// Forcing by a catalog sequence with right coefficients `q_0, q_1, ...`.
    pub fn catalog(entry: CatalogEntry, coeffs: Vec<Biquaternion>) -> Self {
        Self {
            sequence: entry.sequence(),
            coeffs,
            transform: Some(entry),
        }
    }

    /// Forcing by an arbitrary sequence; its transform is summed numerically.
    pub fn sequence(sequence: Sequence, coeffs: Vec<Biquaternion>) -> Self {
        Self {
            sequence,
            coeffs,
            transform: None,
        }
    }

    fn value_at(&self, n: usize) -> Biquaternion {
        self.coeffs
            .iter()
            .enumerate()
            .map(|(k, q)| self.sequence.term(n + k) * *q)
            .sum()
    }

    fn radius(&self) -> f64 {
        match (&self.transform, self.sequence.radius_hint()) {
            (Some(entry), _) => entry.roc_radius(),
            (None, Some(r)) => r,
            (None, None) => roc_estimate(&self.sequence, 64),
        }
    }

    fn transform_at(&self, x: &Biquaternion, opts: EvalOptions) -> Result<Biquaternion> {
        let g_x = match &self.transform {
            Some(entry) => entry.eval(x)?,
            None => eval_truncated(&self.sequence, x, opts)?.value,
        };
        let mut total = Biquaternion::ZERO;
        for (k, q) in self.coeffs.iter().enumerate() {
            total += advance_transform(&self.sequence, g_x, k, x) * *q;
        }
        Ok(total)
    }
}

/// `X[n -> s_{n+k}](x) = X[s](x) x^k - sum_{n<k} s_n x^(k-n)`.
fn advance_transform(s: &Sequence, s_x: Biquaternion, k: usize, x: &Biquaternion) -> Biquaternion {
    let boundary: Biquaternion = (0..k).map(|n| s.term(n) * x.pow((k - n) as u64)).sum();
    s_x * x.pow(k as u64) - boundary
}

#[derive(Debug, Clone)]
pub struct LinearRecurrence {
    coeffs: Vec<Biquaternion>,
    initial: Vec<Biquaternion>,
    forcing: Vec<Forcing>,
    lead_inv: Biquaternion,
}

/// Outcome of checking a candidate closed form against a recurrence.
#[derive(Debug, Clone, PartialEq)]
pub struct VerificationReport {
    pub max_abs_error: f64,
    pub max_rel_error: f64,
    /// Index of the first failing check: the initial value index for the
    /// first `M` checks, then the `n` of the identity at `n`.
    pub first_failure_index: Option<usize>,
    pub n_checked: usize,
    pub tolerance: f64,
}

impl VerificationReport {
    pub fn passed(&self) -> bool {
        self.first_failure_index.is_none()
    }
}

impl LinearRecurrence {
    /// `coeffs` are `p_0..p_M` and `initial` holds `f_0..f_{M-1}`.
    pub fn new(coeffs: Vec<Biquaternion>, initial: Vec<Biquaternion>) -> Result<Self> {
        if coeffs.len() < 2 {
            return Err(Error::InvalidRecurrence(
                "need at least two coefficients (order >= 1)".into(),
            ));
        }
        let order = coeffs.len() - 1;
        if initial.len() != order {
            return Err(Error::InvalidRecurrence(format!(
                "order {order} needs {order} initial values, got {}",
                initial.len()
            )));
        }
        let lead_inv = coeffs[order].inverse()?;
        Ok(Self {
            coeffs,
            initial,
            forcing: Vec::new(),
            lead_inv,
        })
    }

    pub fn with_forcing(mut self, forcing: Forcing) -> Self {
        self.forcing.push(forcing);
        self
    }

    pub fn order(&self) -> usize {
        self.coeffs.len() - 1
    }

    pub fn coeffs(&self) -> &[Biquaternion] {
        &self.coeffs
    }

    pub fn initial(&self) -> &[Biquaternion] {
        &self.initial
    }

    pub fn forcing(&self) -> &[Forcing] {
        &self.forcing
    }

    pub fn is_homogeneous(&self) -> bool {
        self.forcing.is_empty()
    }

    /// Right-hand side of the recurrence at `n`.
    pub fn rhs(&self, n: usize) -> Biquaternion {
        self.forcing.iter().map(|f| f.value_at(n)).sum()
    }

    /// The solution as a lazily iterated, memoized sequence.
    pub fn sequence(&self) -> Sequence {
        let rec = self.clone();
        let order = self.order();
        Sequence::generated(move |idx, prev| {
            if idx < order {
                return rec.initial[idx];
            }
            let n = idx - order;
            let known: Biquaternion = (0..order).map(|m| prev[n + m] * rec.coeffs[m]).sum();
            (rec.rhs(n) - known) * rec.lead_inv
        })
    }

    /// First `len` terms by forward iteration
    /// `f_{n+M} = [rhs(n) - sum_{m<M} f_{n+m} p_m] p_M^-1`.
    pub fn iterate(&self, len: usize) -> Vec<Biquaternion> {
        let order = self.order();
        let mut terms: Vec<Biquaternion> = self.initial.iter().copied().take(len).collect();
        while terms.len() < len {
            let n = terms.len() - order;
            let known: Biquaternion = (0..order).map(|m| terms[n + m] * self.coeffs[m]).sum();
            terms.push((self.rhs(n) - known) * self.lead_inv);
        }
        terms
    }

    /// Transform of the solution at complex `x`.
    ///
    /// Applying the advance rule to each `f_{n+m}` gives `F(x) P(x) = B(x)`
    /// with `P(x) = sum_m x^m p_m` and `B(x)` holding the initial-value
    /// boundary terms plus the forcing transforms, so `F(x) = B(x) P(x)^-1`.
    pub fn transform_value(&self, x: ComplexScalar, opts: EvalOptions) -> Result<Biquaternion> {
        let radius = self.roc_radius();
        let norm = x.norm();
        if norm <= radius {
            return Err(Error::OutsideRoc { norm, radius });
        }
        let xq = Biquaternion::scalar(x);
        let f = Sequence::from_terms(self.initial.clone());
        let mut poly = Biquaternion::ZERO;
        let mut boundary = Biquaternion::ZERO;
        for (m, p) in self.coeffs.iter().enumerate() {
            poly += xq.pow(m as u64) * *p;
            // advance_transform with X[f] = 0 leaves minus the boundary terms
            boundary -= advance_transform(&f, Biquaternion::ZERO, m, &xq) * *p;
        }
        let mut rhs = boundary;
        for forcing in &self.forcing {
            rhs += forcing.transform_at(&xq, opts)?;
        }
        Ok(rhs * poly.inverse()?)
    }

    /// Growth-based radius of convergence of the solution and forcing terms.
    pub fn roc_radius(&self) -> f64 {
        self.forcing
            .iter()
            .map(Forcing::radius)
            .fold(roc_estimate(&self.sequence(), 64), f64::max)
    }

    /// Checks `candidate` against the initial values and against the
    /// recurrence identity for `n = 0..=len-M`.
    ///
    /// Errors are measured in Euclidean magnitude and normalized by
    /// `max(1, largest term in the identity)`.
    pub fn verify_closed_form(&self, candidate: &Sequence, len: usize, tol: f64) -> VerificationReport {
        let order = self.order();
        let mut report = VerificationReport {
            max_abs_error: 0.0,
            max_rel_error: 0.0,
            first_failure_index: None,
            n_checked: 0,
            tolerance: tol,
        };
        let mut record = |index: usize, abs: f64, scale: f64| {
            let rel = abs / scale.max(1.0);
            report.max_abs_error = report.max_abs_error.max(abs);
            report.max_rel_error = report.max_rel_error.max(rel);
            report.n_checked += 1;
            if (rel.is_nan() || rel > tol) && report.first_failure_index.is_none() {
                report.first_failure_index = Some(index);
            }
        };
        for (i, init) in self.initial.iter().enumerate() {
            let got = candidate.term(i);
            record(i, (got - *init).magnitude(), got.magnitude().max(init.magnitude()));
        }
        for n in 0..=len.saturating_sub(order) {
            let mut lhs = Biquaternion::ZERO;
            let mut scale: f64 = 0.0;
            for (m, p) in self.coeffs.iter().enumerate() {
                let t = candidate.term(n + m) * *p;
                scale = scale.max(t.magnitude());
                lhs += t;
            }
            let rhs = self.rhs(n);
            scale = scale.max(rhs.magnitude());
            record(n, (lhs - rhs).magnitude(), scale);
        }
        report
    }
}

/// Solves `sum_{n=0}^{t} kernel^n f(t-n) = target(t)` for `f` by forward
/// substitution, with the kernel power on the left of each term.
pub fn deconvolve_geometric(target: &Sequence, kernel: Biquaternion) -> Sequence {
    let target = target.clone();
    Sequence::generated(move |t, prev| {
        let mut acc = target.term(t);
        let mut power = kernel;
        for n in 1..=t {
            acc -= power * prev[t - n];
            power *= kernel;
        }
        acc
    })
}
