//! Closed-form transforms of standard sequences.
//!
//! Each entry knows its sequence `g_n`, the radius of convergence of its
//! transform, and the closed form `X[g](x)`. Factors are multiplied in the
//! order the formulas are written, and negative powers are computed as
//! positive powers of the inverse.

use crate::biquat::{Biquaternion, ComplexScalar};
use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Stable catalog names, in table order.
pub const CATALOG_NAMES: [&str; 10] = [
    "const_one",
    "ramp_n",
    "ramp_n2",
    "pow_p",
    "n_pow_p",
    "cos_qn",
    "sin_qn",
    "binom_shifted",
    "binom",
    "exp_over_fact",
];

/// Which closed form to use for `n p^n`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum RowFiveForm {
    /// `p x^-1 (1 - p x^-1)^-2`, the form that agrees with direct summation.
    #[default]
    Corrected,
    /// `p (1 - p x^-1)^-1` as the table prints it. Kept to document that it
    /// disagrees with the series.
    AsPrinted,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum CatalogKind {
    ConstOne,
    RampN,
    RampN2,
    PowP { p: Biquaternion },
    NPowP { p: Biquaternion, form: RowFiveForm },
    CosQn { q: Biquaternion },
    SinQn { q: Biquaternion },
    BinomShifted { m: u32, q: Biquaternion },
    Binom { m: u32, q: Biquaternion },
    ExpOverFact { q: Biquaternion },
}

/// Parameters accepted by [`CatalogEntry::by_name`].
#[derive(Debug, Clone, Copy, Default, PartialEq)]
pub struct CatalogParams {
    pub p: Option<Biquaternion>,
    pub q: Option<Biquaternion>,
    pub m: Option<u32>,
    pub row_five: RowFiveForm,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CatalogEntry {
    kind: CatalogKind,
    roc_radius: f64,
}

fn trig_radius(q: &Biquaternion) -> f64 {
    match q.vec_sign() {
        Some(u) => {
            let a = (u * *q).exp();
            let b = (-(u * *q)).exp();
            a.spectral_radius().max(b.spectral_radius())
        }
        None => q.w.im.abs().exp(),
    }
}

/// `C(n, m)` as a float, zero when `n < m`.
fn binomial(n: u64, m: u32) -> f64 {
    if n < m as u64 {
        return 0.0;
    }
    (0..m as u64).fold(1.0, |acc, i| acc * (n - i) as f64 / (i + 1) as f64)
}

fn require(name: &str, v: Option<Biquaternion>, param: &str) -> Result<Biquaternion> {
    v.ok_or_else(|| Error::InvalidParams(format!("{name} requires parameter {param}")))
}

impl CatalogEntry {
    pub fn const_one() -> Self {
        Self { kind: CatalogKind::ConstOne, roc_radius: 1.0 }
    }

    pub fn ramp_n() -> Self {
        Self { kind: CatalogKind::RampN, roc_radius: 1.0 }
    }

    pub fn ramp_n2() -> Self {
        Self { kind: CatalogKind::RampN2, roc_radius: 1.0 }
    }

    pub fn pow_p(p: Biquaternion) -> Self {
        Self { kind: CatalogKind::PowP { p }, roc_radius: p.spectral_radius() }
    }

    pub fn n_pow_p(p: Biquaternion) -> Self {
        Self::n_pow_p_with(p, RowFiveForm::Corrected)
    }

    pub fn n_pow_p_with(p: Biquaternion, form: RowFiveForm) -> Self {
        Self { kind: CatalogKind::NPowP { p, form }, roc_radius: p.spectral_radius() }
    }

    pub fn cos_qn(q: Biquaternion) -> Self {
        Self { kind: CatalogKind::CosQn { q }, roc_radius: trig_radius(&q) }
    }

    pub fn sin_qn(q: Biquaternion) -> Self {
        Self { kind: CatalogKind::SinQn { q }, roc_radius: trig_radius(&q) }
    }

    /// `C(n+m, m) q^n`.
    pub fn binom_shifted(m: u32, q: Biquaternion) -> Self {
        Self { kind: CatalogKind::BinomShifted { m, q }, roc_radius: q.spectral_radius() }
    }

    /// `C(n, m) q^n`; `q` must be invertible.
    pub fn binom(m: u32, q: Biquaternion) -> Result<Self> {
        q.inverse()?;
        Ok(Self { kind: CatalogKind::Binom { m, q }, roc_radius: q.spectral_radius() })
    }

    /// `q^n / n!`.
    pub fn exp_over_fact(q: Biquaternion) -> Self {
        Self { kind: CatalogKind::ExpOverFact { q }, roc_radius: 0.0 }
    }

    pub fn by_name(name: &str, params: &CatalogParams) -> Result<Self> {
        let m = || {
            params
                .m
                .ok_or_else(|| Error::InvalidParams(format!("{name} requires parameter m")))
        };
        Ok(match name {
            "const_one" => Self::const_one(),
            "ramp_n" => Self::ramp_n(),
            "ramp_n2" => Self::ramp_n2(),
            "pow_p" => Self::pow_p(require(name, params.p, "p")?),
            "n_pow_p" => Self::n_pow_p_with(require(name, params.p, "p")?, params.row_five),
            "cos_qn" => Self::cos_qn(require(name, params.q, "q")?),
            "sin_qn" => Self::sin_qn(require(name, params.q, "q")?),
            "binom_shifted" => Self::binom_shifted(m()?, require(name, params.q, "q")?),
            "binom" => Self::binom(m()?, require(name, params.q, "q")?)?,
            "exp_over_fact" => Self::exp_over_fact(require(name, params.q, "q")?),
            other => return Err(Error::InvalidParams(format!("unknown catalog entry {other:?}"))),
        })
    }

    pub fn kind(&self) -> &CatalogKind {
        &self.kind
    }

    pub fn name(&self) -> &'static str {
        match self.kind {
            CatalogKind::ConstOne => "const_one",
            CatalogKind::RampN => "ramp_n",
            CatalogKind::RampN2 => "ramp_n2",
            CatalogKind::PowP { .. } => "pow_p",
            CatalogKind::NPowP { .. } => "n_pow_p",
            CatalogKind::CosQn { .. } => "cos_qn",
            CatalogKind::SinQn { .. } => "sin_qn",
            CatalogKind::BinomShifted { .. } => "binom_shifted",
            CatalogKind::Binom { .. } => "binom",
            CatalogKind::ExpOverFact { .. } => "exp_over_fact",
        }
    }

    /// Radius of convergence `sigma`: the transform converges for norm > sigma.
    pub fn roc_radius(&self) -> f64 {
        self.roc_radius
    }

    /// The term `g_n`.
    pub fn term(&self, n: usize) -> Biquaternion {
        let nf = n as f64;
        match self.kind {
            CatalogKind::ConstOne => Biquaternion::ONE,
            CatalogKind::RampN => Biquaternion::from(nf),
            CatalogKind::RampN2 => Biquaternion::from(nf * nf),
            CatalogKind::PowP { p } => p.pow(n as u64),
            CatalogKind::NPowP { p, .. } => p.pow(n as u64) * nf,
            CatalogKind::CosQn { q } => q.cos_seq_term(n as u64),
            CatalogKind::SinQn { q } => q.sin_seq_term(n as u64),
            CatalogKind::BinomShifted { m, q } => q.pow(n as u64) * binomial(n as u64 + m as u64, m),
            CatalogKind::Binom { m, q } => q.pow(n as u64) * binomial(n as u64, m),
            CatalogKind::ExpOverFact { q } => {
                (1..=n).fold(Biquaternion::ONE, |acc, k| acc * q / k as f64)
            }
        }
    }

    pub fn sequence(&self) -> Sequence {
        let entry = *self;
        Sequence::new(move |n| entry.term(n)).with_radius_hint(self.roc_radius)
    }

    /// Closed-form transform at `x`.
    pub fn eval(&self, x: &Biquaternion) -> Result<Biquaternion> {
        let norm = x.real_norm();
        if norm <= self.roc_radius {
            return Err(Error::OutsideRoc { norm, radius: self.roc_radius });
        }
        let x = *x;
        let x_inv = x.inverse().map_err(|_| Error::NotInvertible)?;
        let one = Biquaternion::ONE;
        Ok(match self.kind {
            CatalogKind::ConstOne => (one - x_inv).inverse()?,
            CatalogKind::RampN => x * (x - one).inverse()?.pow(2),
            CatalogKind::RampN2 => (x * x + x) * (x - one).inverse()?.pow(3),
            CatalogKind::PowP { p } => (one - p * x_inv).inverse()?,
            CatalogKind::NPowP { p, form } => {
                let r = (one - p * x_inv).inverse()?;
                match form {
                    RowFiveForm::Corrected => p * x_inv * r.pow(2),
                    RowFiveForm::AsPrinted => p * r,
                }
            }
            CatalogKind::CosQn { q } => trig_transform(&q, q.vec_abs(), &x)?.0,
            CatalogKind::SinQn { q } => trig_transform(&q, q.vec_abs(), &x)?.1,
            CatalogKind::BinomShifted { m, q } => {
                (one - x_inv * q).inverse()?.pow(m as u64) * (one - q * x_inv).inverse()?
            }
            CatalogKind::Binom { m, q } => {
                (x * q.inverse()? - one).inverse()?.pow(m as u64) * (one - q * x_inv).inverse()?
            }
            CatalogKind::ExpOverFact { q } => (q * x_inv).exp(),
        })
    }
}

/// Transforms of `cos(q n)` and `sin(q n)` at `x`, using `root` as `|Vec(q)|`.
///
/// Either square root may be passed: `sgn(q) = Vec(q)/root` and `root` change
/// sign together, and both closed forms are symmetric under that flip.
pub fn trig_transform(
    q: &Biquaternion,
    root: ComplexScalar,
    x: &Biquaternion,
) -> Result<(Biquaternion, Biquaternion)> {
    let one = Biquaternion::ONE;
    let x = *x;
    let x_inv = x.inverse().map_err(|_| Error::NotInvertible)?;
    if root.norm() < crate::biquat::DEGENERATE_VEC_TOL {
        let c = q.cos_seq_term(1);
        let s = q.sin_seq_term(1);
        let den = (x * x - x * c * 2.0 + one).inverse()?;
        return Ok(((x * x - x * c) * den, x * s * den));
    }
    let u = q.vector_part() * root.inv();
    let plus = (one - (u * *q).exp() * x_inv).inverse()?;
    let minus = (one - (-(u * *q)).exp() * x_inv).inverse()?;
    let cos = (plus + minus) * 0.5;
    let sin = u * plus * -0.5 + u * minus * 0.5;
    Ok((cos, sin))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztransform::eval::{eval_truncated, EvalOptions};
    use num_complex::Complex64;

    fn close(a: &Biquaternion, b: &Biquaternion, tol: f64) -> bool {
        (*a - *b).magnitude() <= tol
    }

    fn partial(entry: &CatalogEntry, x: f64, n: usize) -> Biquaternion {
        (0..n).map(|k| entry.term(k) * x.powi(-(k as i32))).sum()
    }

    #[test]
    fn pow_p_at_four() {
        let e = CatalogEntry::pow_p(Biquaternion::I * 2.0);
        let x = Biquaternion::from(4.0);
        let expected = Biquaternion::real(0.8, 0.4, 0.0, 0.0);
        assert!(close(&e.eval(&x).unwrap(), &expected, 1e-15));
        let tv = eval_truncated(&e.sequence(), &x, EvalOptions::default()).unwrap();
        assert!(close(&tv.value, &expected, 1e-12));
    }

    #[test]
    fn ramp_at_two() {
        let e = CatalogEntry::ramp_n();
        assert!(close(&e.eval(&Biquaternion::from(2.0)).unwrap(), &Biquaternion::from(2.0), 1e-15));
        assert!(close(&partial(&e, 2.0, 200), &Biquaternion::from(2.0), 1e-13));
    }

    #[test]
    fn exp_over_fact_j_at_two() {
        let e = CatalogEntry::exp_over_fact(Biquaternion::J);
        let expected = Biquaternion::real(0.5f64.cos(), 0.0, 0.5f64.sin(), 0.0);
        assert!(close(&e.eval(&Biquaternion::from(2.0)).unwrap(), &expected, 1e-15));
        let tv = eval_truncated(&e.sequence(), &Biquaternion::from(2.0), EvalOptions::default()).unwrap();
        assert!(close(&tv.value, &expected, 1e-12));
    }

    #[test]
    fn row_five_corrected_and_as_printed() {
        let x = Biquaternion::from(2.0);
        let series = partial(&CatalogEntry::n_pow_p(Biquaternion::from(0.5)), 2.0, 200);
        assert!(close(&series, &Biquaternion::from(4.0 / 9.0), 1e-14));
        let corrected = CatalogEntry::n_pow_p(Biquaternion::from(0.5)).eval(&x).unwrap();
        assert!(close(&corrected, &Biquaternion::from(4.0 / 9.0), 1e-15));
        let printed = CatalogEntry::n_pow_p_with(Biquaternion::from(0.5), RowFiveForm::AsPrinted)
            .eval(&x)
            .unwrap();
        assert!(!close(&printed, &series, 1e-3));
    }

    #[test]
    fn outside_roc() {
        let e = CatalogEntry::const_one();
        assert!(matches!(e.eval(&Biquaternion::from(0.5)), Err(Error::OutsideRoc { .. })));
        assert!(matches!(e.eval(&Biquaternion::from(1.0)), Err(Error::OutsideRoc { .. })));
    }

    #[test]
    fn by_name_checks_params() {
        assert!(CatalogEntry::by_name("pow_p", &CatalogParams::default()).is_err());
        assert!(CatalogEntry::by_name("nope", &CatalogParams::default()).is_err());
        let p = CatalogParams { q: Some(Biquaternion::I), m: Some(2), ..Default::default() };
        assert_eq!(CatalogEntry::by_name("binom", &p).unwrap().name(), "binom");
        let zero_divisor = CatalogParams {
            q: Some(Biquaternion::ONE + Biquaternion::CI * Biquaternion::K),
            m: Some(1),
            ..Default::default()
        };
        assert!(CatalogEntry::by_name("binom", &zero_divisor).is_err());
        for name in CATALOG_NAMES {
            let params = CatalogParams {
                p: Some(Biquaternion::I * 0.5),
                q: Some(Biquaternion::I * 0.5),
                m: Some(1),
                ..Default::default()
            };
            assert_eq!(CatalogEntry::by_name(name, &params).unwrap().name(), name);
        }
    }

    #[test]
    fn trig_branch_invariance() {
        let q = Biquaternion::new(
            Complex64::new(0.3, 0.1),
            Complex64::new(0.4, -0.2),
            Complex64::new(-0.1, 0.3),
            Complex64::new(0.2, 0.0),
        );
        let x = Biquaternion::from(Complex64::new(2.5, 1.0));
        let r = q.vec_abs();
        let (c1, s1) = trig_transform(&q, r, &x).unwrap();
        let (c2, s2) = trig_transform(&q, -r, &x).unwrap();
        assert!(close(&c1, &c2, 1e-12));
        assert!(close(&s1, &s2, 1e-12));
    }

    #[test]
    fn binomial_values() {
        assert_eq!(binomial(5, 2), 10.0);
        assert_eq!(binomial(1, 2), 0.0);
        assert_eq!(binomial(7, 0), 1.0);
    }
}
