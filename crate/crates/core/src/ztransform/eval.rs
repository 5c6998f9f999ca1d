//! Truncated evaluation of `X[f](x) = sum f_n x^-n`.

use crate::biquat::Biquaternion;
use crate::error::{Error, Result};
use crate::sequence::Sequence;

/// Width of the sliding window used to estimate the geometric decay rate.
pub const RATIO_WINDOW: usize = 8;

/// Terms larger than this are treated as divergence.
const OVERFLOW_MAGNITUDE: f64 = 1e250;

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct EvalOptions {
    /// Absolute target for the tail estimate.
    pub eps: f64,
    pub max_terms: usize,
}

impl Default for EvalOptions {
    fn default() -> Self {
        Self {
            eps: 1e-12,
            max_terms: 10_000,
        }
    }
}

impl EvalOptions {
    pub fn new(eps: f64, max_terms: usize) -> Self {
        Self { eps, max_terms }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum TailBound {
    /// Estimated bound on the Euclidean magnitude of the omitted tail.
    Bounded(f64),
    /// The term budget ran out before the tail could be certified.
    Unbounded,
}

impl TailBound {
    pub fn value(&self) -> Option<f64> {
        match self {
            TailBound::Bounded(b) => Some(*b),
            TailBound::Unbounded => None,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TransformValue {
    pub value: Biquaternion,
    pub terms_used: usize,
    pub tail_bound: TailBound,
}

/// Decay estimate over the last two windows of term magnitudes.
///
/// Returns `(rate, window_max)` where `rate` is the per-term ratio of the
/// window maxima.
fn window_rate(mags: &[f64]) -> Option<(f64, f64)> {
    let used = mags.len();
    if used < 2 * RATIO_WINDOW {
        return None;
    }
    let max_of = |s: &[f64]| s.iter().copied().fold(0.0, f64::max);
    let cur = max_of(&mags[used - RATIO_WINDOW..]);
    let prev = max_of(&mags[used - 2 * RATIO_WINDOW..used - RATIO_WINDOW]);
    let rate = if cur == 0.0 {
        0.0
    } else if prev == 0.0 {
        f64::INFINITY
    } else {
        (cur / prev).powf(1.0 / RATIO_WINDOW as f64)
    };
    Some((rate, cur))
}

/// Sums `f_n x^-n` (coefficient on the left) until the geometric tail
/// estimate drops below `opts.eps`.
///
/// The decay rate `r` is the per-term ratio between the maxima of the last
/// two windows of `RATIO_WINDOW` term magnitudes; once `r < 1` the tail is
/// estimated as `m r / (1 - r)` with `m` the latest window maximum. Sixteen
/// consecutive zero terms therefore end the summation.
pub fn eval_truncated(f: &Sequence, x: &Biquaternion, opts: EvalOptions) -> Result<TransformValue> {
    if let Some(radius) = f.radius_hint() {
        let norm = x.real_norm();
        if norm <= radius {
            return Err(Error::OutsideRoc { norm, radius });
        }
    }
    let x_inv = x.inverse().map_err(|_| Error::NotInvertible)?;

    let mut sum = Biquaternion::ZERO;
    let mut power = Biquaternion::ONE;
    let mut mags = Vec::with_capacity(64);
    let mut last_rate = f64::NAN;
    for n in 0..opts.max_terms {
        let term = f.term(n) * power;
        let mag = term.magnitude();
        if !mag.is_finite() || mag > OVERFLOW_MAGNITUDE {
            return Err(Error::NoConvergence {
                terms: n + 1,
                ratio: last_rate,
            });
        }
        sum += term;
        mags.push(mag);
        power *= x_inv;
        if let Some((rate, window_max)) = window_rate(&mags) {
            last_rate = rate;
            if rate < 1.0 {
                let bound = window_max * rate / (1.0 - rate);
                if bound < opts.eps {
                    return Ok(TransformValue {
                        value: sum,
                        terms_used: n + 1,
                        tail_bound: TailBound::Bounded(bound),
                    });
                }
            }
        }
    }
    if last_rate > 1.0 {
        return Err(Error::NoConvergence {
            terms: opts.max_terms,
            ratio: last_rate,
        });
    }
    Ok(TransformValue {
        value: sum,
        terms_used: opts.max_terms.max(1),
        tail_bound: TailBound::Unbounded,
    })
}

/// Root-test estimate of the radius of convergence: the largest
/// `|f_n|^(1/n)` for `n` in `[n_max/2, n_max]`, using the Euclidean
/// magnitude. `n_max` is raised to 8 if smaller.
pub fn roc_estimate(f: &Sequence, n_max: usize) -> f64 {
    let n_max = n_max.max(8);
    (n_max / 2..=n_max)
        .map(|n| {
            let mag = f.term(n).magnitude();
            if mag == 0.0 {
                0.0
            } else {
                mag.powf(1.0 / n as f64)
            }
        })
        .fold(0.0, f64::max)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn all_ones_at_two() {
        let tv = eval_truncated(&Sequence::constant(Biquaternion::ONE), &Biquaternion::from(2.0), EvalOptions::new(1e-15, 10_000)).unwrap();
        assert!((tv.value - Biquaternion::from(2.0)).magnitude() < 1e-14);
        assert!(tv.terms_used <= 60, "{}", tv.terms_used);
        assert!(tv.tail_bound.value().unwrap() < 1e-15);
    }

    #[test]
    fn geometric_two_i_at_four() {
        let f = Sequence::geometric(Biquaternion::I * 2.0);
        let tv = eval_truncated(&f, &Biquaternion::from(4.0), EvalOptions::default()).unwrap();
        assert!((tv.value - Biquaternion::real(0.8, 0.4, 0.0, 0.0)).magnitude() < 1e-12);
    }

    #[test]
    fn growing_terms_do_not_converge() {
        let f = Sequence::geometric(Biquaternion::I + Biquaternion::J).without_radius_hint();
        let err = eval_truncated(&f, &Biquaternion::ONE, EvalOptions::default()).unwrap_err();
        assert!(matches!(err, Error::NoConvergence { .. }));
        let hinted = Sequence::geometric(Biquaternion::I + Biquaternion::J);
        assert!(matches!(
            eval_truncated(&hinted, &Biquaternion::ONE, EvalOptions::default()),
            Err(Error::OutsideRoc { .. })
        ));
    }

    #[test]
    fn zero_divisor_point() {
        let x = Biquaternion::ONE + Biquaternion::CI * Biquaternion::K;
        let f = Sequence::delta().without_radius_hint();
        assert_eq!(eval_truncated(&f, &x, EvalOptions::default()), Err(Error::NotInvertible));
    }

    #[test]
    fn tail_bound_dominates_pure_geometric_remainder() {
        // remainder of sum 0.7^n after N terms is 0.7^N / 0.3
        let f = Sequence::constant(Biquaternion::ONE);
        let tv = eval_truncated(&f, &Biquaternion::from(1.0 / 0.7), EvalOptions::new(1e-9, 10_000)).unwrap();
        let true_tail = 0.7f64.powi(tv.terms_used as i32) / 0.3;
        assert!(tv.tail_bound.value().unwrap() >= true_tail);
        assert!((tv.value - Biquaternion::from(1.0 / 0.3)).magnitude() <= tv.tail_bound.value().unwrap() + 1e-13);
    }

    #[test]
    fn budget_exhausted_without_certificate() {
        let f = Sequence::constant(Biquaternion::ONE);
        let tv = eval_truncated(&f, &Biquaternion::from(1.01), EvalOptions::new(1e-15, 50)).unwrap();
        assert_eq!(tv.tail_bound, TailBound::Unbounded);
        assert_eq!(tv.terms_used, 50);
    }

    #[test]
    fn roc_estimates() {
        let near = |a: f64, b: f64, tol: f64| (a - b).abs() <= tol;
        assert!(near(roc_estimate(&Sequence::constant(Biquaternion::ONE), 64), 1.0, 0.01));
        assert!(near(roc_estimate(&Sequence::geometric(Biquaternion::I * 2.0), 64), 2.0, 0.02));
        let s = Sequence::geometric(Biquaternion::ONE + Biquaternion::CI * Biquaternion::K);
        assert!(near(roc_estimate(&s, 64), 2.0, 0.05));
        assert_eq!(roc_estimate(&Sequence::delta(), 64), 0.0);
    }
}
