use bqz::ztransform::{geometric_remainder, geometric_sum, partial_sum};
use bqz::{format_literal, parse_literal, Biquaternion};
use proptest::prelude::*;

fn bq(range: f64) -> impl Strategy<Value = Biquaternion> {
    prop::array::uniform8(-range..range).prop_map(Biquaternion::from_components)
}

fn exp_series(q: &Biquaternion, terms: usize) -> Biquaternion {
    let mut sum = Biquaternion::ZERO;
    let mut term = Biquaternion::ONE;
    for n in 0..terms {
        sum += term;
        term = term * *q / (n + 1) as f64;
    }
    sum
}

fn cos_series(q: &Biquaternion, terms: usize) -> Biquaternion {
    let q2 = *q * *q;
    let mut sum = Biquaternion::ZERO;
    let mut term = Biquaternion::ONE;
    for m in 0..terms {
        sum += term;
        term = -(term * q2) / ((2 * m + 1) * (2 * m + 2)) as f64;
    }
    sum
}

fn sin_series(q: &Biquaternion, terms: usize) -> Biquaternion {
    let q2 = *q * *q;
    let mut sum = Biquaternion::ZERO;
    let mut term = *q;
    for m in 0..terms {
        sum += term;
        term = -(term * q2) / ((2 * m + 2) * (2 * m + 3)) as f64;
    }
    sum
}

fn close(a: &Biquaternion, e: &Biquaternion, tol: f64) -> bool {
    (*a - *e).magnitude() <= tol * e.magnitude().max(1.0)
}

proptest! {
    #[test]
    fn multiplication_is_associative(p in bq(2.0), q in bq(2.0), r in bq(2.0)) {
        prop_assert!(close(&((p * q) * r), &(p * (q * r)), 1e-12));
    }

    #[test]
    fn multiplication_distributes(p in bq(2.0), q in bq(2.0), r in bq(2.0)) {
        prop_assert!(close(&(p * (q + r)), &(p * q + p * r), 1e-12));
        prop_assert!(close(&((q + r) * p), &(q * p + r * p), 1e-12));
    }

    #[test]
    fn real_norm_is_multiplicative(p in bq(2.0), q in bq(2.0)) {
        let lhs = (p * q).real_norm();
        let rhs = p.real_norm() * q.real_norm();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs.max(1e-300) + 1e-13);
    }

    #[test]
    fn real_norm_bounded_by_magnitude(p in bq(2.0)) {
        prop_assert!(p.real_norm() <= p.magnitude() * (1.0 + 1e-12));
    }

    #[test]
    fn conjugation_reverses_products(p in bq(2.0), q in bq(2.0)) {
        prop_assert!(close(&(p * q).conj(), &(q.conj() * p.conj()), 1e-12));
        prop_assert!(close(&(p * p.conj()), &Biquaternion::scalar(p.complex_norm_sq()), 1e-12));
    }

    #[test]
    fn inverse_round_trip(p in bq(2.0)) {
        prop_assume!(p.complex_norm_sq().norm() > 1e-3);
        let inv = p.inverse().unwrap();
        prop_assert!(close(&(p * inv), &Biquaternion::ONE, 1e-9));
        prop_assert!(close(&(inv * p), &Biquaternion::ONE, 1e-9));
    }

    #[test]
    fn pow_matches_repeated_product(p in bq(1.5), n in 0u64..12) {
        let mut acc = Biquaternion::ONE;
        for _ in 0..n {
            acc *= p;
        }
        prop_assert!(close(&p.pow(n), &acc, 1e-11));
    }

    #[test]
    fn spectral_radius_governs_growth(p in bq(1.5)) {
        let rho = p.spectral_radius();
        let grown = p.pow(64).magnitude().powf(1.0 / 64.0);
        prop_assert!(grown <= rho * 1.2 + 1e-9);
    }

    #[test]
    fn exp_matches_series(p in bq(0.7)) {
        prop_assume!(p.real_norm() <= 2.0);
        prop_assert!((p.exp() - exp_series(&p, 40)).magnitude() <= 1e-10);
    }

    #[test]
    fn cos_sin_match_series(p in bq(0.7), n in 1u64..3) {
        let arg = p * n as f64;
        prop_assume!(arg.real_norm() <= 2.0);
        prop_assert!((p.cos_seq_term(n) - cos_series(&arg, 40)).magnitude() <= 1e-10);
        prop_assert!((p.sin_seq_term(n) - sin_series(&arg, 40)).magnitude() <= 1e-10);
    }

    #[test]
    fn literal_round_trip(p in bq(100.0)) {
        prop_assert_eq!(parse_literal(&format_literal(&p)).unwrap(), p);
    }

    #[test]
    fn geometric_remainder_identity(
        dir in prop::array::uniform4(-1.0f64..1.0),
        scale in 0.1f64..0.9,
        n in prop::sample::select(vec![5usize, 10, 20]),
    ) {
        let raw = Biquaternion::real(dir[0], dir[1], dir[2], dir[3]);
        prop_assume!(raw.real_norm() > 1e-3);
        let y = raw * (scale / raw.real_norm());
        let s = geometric_sum(&y).unwrap();
        let lhs = (s - partial_sum(&y, n)).real_norm();
        let rhs = geometric_remainder(&y, n).unwrap();
        // subtracting S_N from S loses everything below f64 resolution of S
        let floor = 64.0 * f64::EPSILON * s.magnitude();
        prop_assert!((lhs - rhs).abs() <= 1e-10 * rhs + floor);
    }
}

#[test]
fn branch_seam_is_continuous() {
    let base = Biquaternion::real(0.4, 0.0, 0.0, 0.0);
    let nudged = base + Biquaternion::real(0.0, 1e-6, -0.5e-6, 0.2e-6);
    let tiny_vec = nudged.vector_part();
    for n in 0..5u64 {
        let nf = n as f64;
        let t = 0.4 * nf;
        let cos_degenerate = Biquaternion::from(t.cos()) - tiny_vec * (nf * t.sin());
        let sin_degenerate = Biquaternion::from(t.sin()) + tiny_vec * (nf * t.cos());
        assert!((nudged.cos_seq_term(n) - cos_degenerate).magnitude() <= 1e-5);
        assert!((nudged.sin_seq_term(n) - sin_degenerate).magnitude() <= 1e-5);
    }
}
