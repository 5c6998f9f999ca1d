//! Sequence operators and the transform rules they obey.
//!
//! Products are noncommutative, so every operator keeps the side on which a
//! coefficient multiplies: sequence coefficients sit to the left of `x^-n`
//! and shift powers of `x` multiply on the right.

use crate::biquat::{Biquaternion, ComplexScalar};
use crate::error::{Error, Result};
use crate::sequence::Sequence;
use crate::ztransform::eval::{eval_truncated, roc_estimate, EvalOptions};

/// Commutation tolerance for the `q^n` scaling rule.
pub const COMMUTE_TOL: f64 = 1e-12;

fn combined_hint(f: &Sequence, g: &Sequence) -> Option<f64> {
    Some(f.radius_hint()?.max(g.radius_hint()?))
}

fn with_hint(s: Sequence, hint: Option<f64>) -> Sequence {
    match hint {
        Some(r) => s.with_radius_hint(r),
        None => s,
    }
}

/// `c1 f_n + c2 g_n`.
pub fn op_linear_left(c1: Biquaternion, f: &Sequence, c2: Biquaternion, g: &Sequence) -> Sequence {
    let (fc, gc) = (f.clone(), g.clone());
    with_hint(
        Sequence::new(move |n| c1 * fc.term(n) + c2 * gc.term(n)),
        combined_hint(f, g),
    )
}

/// `f_n c1 + g_n c2`.
pub fn op_linear_right(f: &Sequence, c1: Biquaternion, g: &Sequence, c2: Biquaternion) -> Sequence {
    let (fc, gc) = (f.clone(), g.clone());
    with_hint(
        Sequence::new(move |n| fc.term(n) * c1 + gc.term(n) * c2),
        combined_hint(f, g),
    )
}

/// `c1 f_n + g_n c2`.
pub fn op_linear_two_side(c1: Biquaternion, f: &Sequence, g: &Sequence, c2: Biquaternion) -> Sequence {
    let (fc, gc) = (f.clone(), g.clone());
    with_hint(
        Sequence::new(move |n| c1 * fc.term(n) + gc.term(n) * c2),
        combined_hint(f, g),
    )
}

/// `g_n = f_n q^n` for invertible `q`.
///
/// The radius hint becomes `sigma_f * rho(q)` with `rho` the spectral radius.
pub fn op_scale_qn(f: &Sequence, q: Biquaternion) -> Result<Sequence> {
    q.inverse()?;
    let fc = f.clone();
    let hint = f.radius_hint().map(|r| r * q.spectral_radius());
    Ok(with_hint(Sequence::new(move |n| fc.term(n) * q.pow(n as u64)), hint))
}

/// Whether `q x = x q` to within [`COMMUTE_TOL`] (relative to the factor sizes).
pub fn commutes(q: &Biquaternion, x: &Biquaternion) -> bool {
    let gap = (*q * *x - *x * *q).magnitude();
    gap <= COMMUTE_TOL * (q.magnitude() * x.magnitude()).max(1.0)
}

/// Right side of the scaling rule, `X[f](q^-1 x)`, or `None` when `q` and `x`
/// do not commute and the rule does not apply.
pub fn scale_qn_transform(
    f: &Sequence,
    q: &Biquaternion,
    x: &Biquaternion,
    opts: EvalOptions,
) -> Result<Option<Biquaternion>> {
    if !commutes(q, x) {
        return Ok(None);
    }
    let point = q.inverse()? * *x;
    // the hint of `f` is in terms of the scaled point already
    Ok(Some(eval_truncated(f, &point, opts)?.value))
}

/// Advance rule: transform of `n -> f_{n+k}` computed as
/// `X[f](x) x^k - sum_{n<k} f_n x^(k-n)`.
pub fn op_shift_left(f: &Sequence, k: usize, x: &Biquaternion, opts: EvalOptions) -> Result<Biquaternion> {
    let base = eval_truncated(f, x, opts)?.value;
    let boundary: Biquaternion = (0..k).map(|n| f.term(n) * x.pow((k - n) as u64)).sum();
    Ok(base * x.pow(k as u64) - boundary)
}

/// Delay rule: transform of the zero-padded `n -> f_{n-k}` computed as
/// `X[f](x) x^-k`.
pub fn op_shift_right(f: &Sequence, k: usize, x: &Biquaternion, opts: EvalOptions) -> Result<Biquaternion> {
    let base = eval_truncated(f, x, opts)?.value;
    let x_inv = x.inverse().map_err(|_| Error::NotInvertible)?;
    Ok(base * x_inv.pow(k as u64))
}

/// Default central-difference step `1e-5 * max(1, |x|)`.
pub fn default_step(x: ComplexScalar) -> f64 {
    1e-5 * x.norm().max(1.0)
}

/// n-scaling rule: transform of `n -> n f_n` at complex `x`, computed as
/// `-x dX[f]/dx` with a central difference of step `h` along the real axis.
pub fn op_n_scale(f: &Sequence, x: ComplexScalar, h: f64, opts: EvalOptions) -> Result<Biquaternion> {
    let sigma = f.radius_hint().unwrap_or_else(|| roc_estimate(f, 64));
    let norm = x.norm();
    if norm <= sigma + h {
        return Err(Error::OutsideRoc { norm, radius: sigma + h });
    }
    let ahead = eval_truncated(f, &Biquaternion::scalar(x + h), opts)?.value;
    let behind = eval_truncated(f, &Biquaternion::scalar(x - h), opts)?.value;
    Ok((ahead - behind) * (-x / (2.0 * h)))
}

/// Convolution `w_n = sum_{k=0}^{n} f_{n-k} g_k`.
pub fn convolve(f: &Sequence, g: &Sequence) -> Sequence {
    let (fc, gc) = (f.clone(), g.clone());
    with_hint(
        Sequence::new(move |n| (0..=n).map(|k| fc.term(n - k) * gc.term(k)).sum()),
        combined_hint(f, g),
    )
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ztransform::catalog::CatalogEntry;

    fn opts() -> EvalOptions {
        EvalOptions::new(1e-14, 10_000)
    }

    fn close(a: &Biquaternion, b: &Biquaternion, tol: f64) -> bool {
        (*a - *b).magnitude() <= tol * b.magnitude().max(1.0)
    }

    fn ones() -> Sequence {
        CatalogEntry::const_one().sequence()
    }

    fn ramp() -> Sequence {
        CatalogEntry::ramp_n().sequence()
    }

    #[test]
    fn linear_left_examples() {
        let x = Biquaternion::from(3.0);
        let s = op_linear_left(Biquaternion::ONE, &ones(), Biquaternion::ZERO, &ramp());
        let a = eval_truncated(&s, &x, opts()).unwrap().value;
        let b = eval_truncated(&ones(), &x, opts()).unwrap().value;
        assert!(close(&a, &b, 1e-13));

        let s = op_linear_left(Biquaternion::I, &ones(), Biquaternion::J, &ramp());
        let got = eval_truncated(&s, &x, opts()).unwrap().value;
        let expected = Biquaternion::I * (1.0 / (1.0 - 1.0 / 3.0)) + Biquaternion::J * 0.75;
        assert!(close(&got, &expected, 1e-12));
    }

    #[test]
    fn linear_right_with_ik() {
        let x = Biquaternion::from(3.0);
        let ik = Biquaternion::CI * Biquaternion::K;
        let f = CatalogEntry::pow_p(Biquaternion::I * 0.5).sequence();
        let s = op_linear_right(&f, ik, &ones(), Biquaternion::ZERO);
        let direct = eval_truncated(&f.map(move |_, t| t * ik), &x, opts()).unwrap().value;
        let rule = eval_truncated(&f, &x, opts()).unwrap().value * ik;
        assert!(close(&eval_truncated(&s, &x, opts()).unwrap().value, &direct, 1e-13));
        assert!(close(&rule, &direct, 1e-12));
    }

    #[test]
    fn scale_qn_cases() {
        let f = ones();
        let same = op_scale_qn(&f, Biquaternion::ONE).unwrap();
        assert_eq!(same.prefix(5), f.prefix(5));

        let q = Biquaternion::I * 2.0;
        let x = Biquaternion::I * 6.0;
        let g = op_scale_qn(&f, q).unwrap();
        let lhs = eval_truncated(&g, &x, opts()).unwrap().value;
        let rhs = scale_qn_transform(&f, &q, &x, opts()).unwrap().unwrap();
        assert!(close(&lhs, &Biquaternion::from(1.5), 1e-12));
        assert!(close(&rhs, &Biquaternion::from(1.5), 1e-12));

        assert!(!commutes(&Biquaternion::I, &Biquaternion::J));
        assert_eq!(scale_qn_transform(&f, &Biquaternion::I, &Biquaternion::J, opts()).unwrap(), None);
        let zd = Biquaternion::ONE + Biquaternion::CI * Biquaternion::K;
        assert!(op_scale_qn(&f, zd).is_err());
    }

    #[test]
    fn shift_left_cases() {
        let x = Biquaternion::from(2.0);
        let got = op_shift_left(&ones(), 1, &x, opts()).unwrap();
        assert!(close(&got, &Biquaternion::from(2.0), 1e-12));

        let f = Sequence::geometric(Biquaternion::CI * Biquaternion::J);
        let x = Biquaternion::from(3.0);
        let got = op_shift_left(&f, 2, &x, opts()).unwrap();
        let oracle = eval_truncated(&f.advanced(2), &x, opts()).unwrap().value;
        assert!(close(&got, &oracle, 1e-12));

        let f = Sequence::geometric(Biquaternion::I * 0.5).delayed(1);
        let got = op_shift_left(&f, 1, &x, opts()).unwrap();
        let base = eval_truncated(&f, &x, opts()).unwrap().value * x;
        assert!(close(&got, &base, 1e-13));
    }

    #[test]
    fn shift_right_cases() {
        let x = Biquaternion::from(2.0);
        let got = op_shift_right(&ones(), 3, &x, opts()).unwrap();
        assert!(close(&got, &Biquaternion::from(0.25), 1e-12));
        let padded = eval_truncated(&ones().delayed(3), &x, opts()).unwrap().value;
        assert!(close(&padded, &Biquaternion::from(0.25), 1e-12));

        let f = Sequence::geometric(Biquaternion::I * 2.0);
        let x = Biquaternion::from(4.0);
        let got = op_shift_right(&f, 1, &x, opts()).unwrap();
        assert!(close(&got, &(Biquaternion::real(0.8, 0.4, 0.0, 0.0) / 4.0), 1e-12));

        let y = Biquaternion::real(3.0, 0.5, 0.0, 0.2);
        let back = op_shift_left(&f.delayed(2), 2, &y, opts()).unwrap();
        let orig = eval_truncated(&f, &y, opts()).unwrap().value;
        assert!(close(&back, &orig, 1e-11));
    }

    #[test]
    fn n_scale_cases() {
        let x = ComplexScalar::new(2.0, 0.0);
        let got = op_n_scale(&ones(), x, 1e-4, opts()).unwrap();
        assert!(close(&got, &Biquaternion::from(2.0), 1e-6));

        let p = Biquaternion::I * 2.0;
        let x = ComplexScalar::new(4.0, 0.0);
        let got = op_n_scale(&Sequence::geometric(p), x, default_step(x), opts()).unwrap();
        let row5 = CatalogEntry::n_pow_p(p).eval(&Biquaternion::scalar(x)).unwrap();
        assert!(close(&got, &row5, 1e-6));

        let got = op_n_scale(&Sequence::zero(), x, 1e-4, opts()).unwrap();
        assert_eq!(got, Biquaternion::ZERO);
    }

    #[test]
    fn convolve_with_delta_is_identity() {
        let g = Sequence::geometric(Biquaternion::real(0.1, 0.4, -0.3, 0.2));
        let w = convolve(&Sequence::delta(), &g);
        for n in 0..20 {
            assert_eq!(w.term(n), g.term(n));
        }
    }

    #[test]
    fn convolution_transform_at_eight() {
        let f = Sequence::geometric(Biquaternion::J * 3.0);
        let g = Sequence::geometric(Biquaternion::I * 2.0);
        let x = Biquaternion::from(8.0);
        let w = eval_truncated(&convolve(&f, &g), &x, opts()).unwrap().value;
        let prod = eval_truncated(&f, &x, opts()).unwrap().value * eval_truncated(&g, &x, opts()).unwrap().value;
        assert!(close(&w, &prod, 1e-9));
    }
}
