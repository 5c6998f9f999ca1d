//! Seeded random catalog instances and evaluation points.

use bqz::ztransform::{CatalogEntry, CatalogParams, RowFiveForm};
use bqz::{Biquaternion, ComplexScalar};
use rand::Rng;
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;

/// Independent stream per (seed, row) so that subsets of rows reproduce the
/// same points as a full run.
pub fn row_rng(seed: u64, row: usize) -> ChaCha8Rng {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    rng.set_stream(row as u64 + 1);
    rng
}

pub fn real_bq(rng: &mut impl Rng, range: f64) -> Biquaternion {
    Biquaternion::real(
        rng.gen_range(-range..range),
        rng.gen_range(-range..range),
        rng.gen_range(-range..range),
        rng.gen_range(-range..range),
    )
}

pub fn complex_bq(rng: &mut impl Rng, range: f64) -> Biquaternion {
    let mut c = [0.0; 8];
    for v in &mut c {
        *v = rng.gen_range(-range..range);
    }
    Biquaternion::from_components(c)
}

/// Parameter with Euclidean magnitude in `[lo, hi]`, real or complexified.
fn param(rng: &mut impl Rng, lo: f64, hi: f64) -> Biquaternion {
    loop {
        let raw = if rng.gen_bool(0.5) { real_bq(rng, 1.0) } else { complex_bq(rng, 1.0) };
        let mag = raw.magnitude();
        if mag > 1e-3 {
            return raw * (rng.gen_range(lo..hi) / mag);
        }
    }
}

/// Trig parameter: even draws take the generic branch, odd draws one of the
/// two degenerate shapes (pure scalar, or a nilpotent vector part such as
/// `s (i + I j)` whose vector square root vanishes).
fn trig_param(rng: &mut impl Rng, draw: usize) -> Biquaternion {
    if draw.is_multiple_of(2) {
        return param(rng, 0.2, 1.0);
    }
    let w = ComplexScalar::new(rng.gen_range(-1.0..1.0), rng.gen_range(-0.3..0.3));
    if draw % 4 == 1 {
        Biquaternion::scalar(w)
    } else {
        let s = rng.gen_range(-0.8..0.8);
        let nil = (Biquaternion::I + Biquaternion::CI * Biquaternion::J) * s;
        Biquaternion::scalar(w) + nil
    }
}

fn invertible_param(rng: &mut impl Rng, lo: f64, hi: f64) -> Biquaternion {
    loop {
        let q = param(rng, lo, hi);
        if q.complex_norm_sq().norm() > 0.05 * q.magnitude_sq() {
            return q;
        }
    }
}

/// Random instance of the named catalog row; `draw` selects the branch for
/// rows with more than one.
pub fn catalog_instance(
    rng: &mut impl Rng,
    name: &str,
    draw: usize,
    row_five: RowFiveForm,
) -> bqz::Result<CatalogEntry> {
    let mut params = CatalogParams { row_five, ..Default::default() };
    match name {
        "pow_p" | "n_pow_p" => params.p = Some(param(rng, 0.2, 1.5)),
        "cos_qn" | "sin_qn" => params.q = Some(trig_param(rng, draw)),
        "binom_shifted" => {
            params.q = Some(param(rng, 0.2, 1.5));
            params.m = Some(rng.gen_range(0..5));
        }
        "binom" => {
            params.q = Some(invertible_param(rng, 0.3, 1.5));
            params.m = Some(rng.gen_range(0..5));
        }
        "exp_over_fact" => params.q = Some(param(rng, 0.2, 2.0)),
        _ => {}
    }
    CatalogEntry::by_name(name, &params)
}

/// Complex point with `|x|` between two and four times the convergence
/// radius, or in `[1, 3]` when the radius is zero.
pub fn point_outside(rng: &mut impl Rng, radius: f64) -> ComplexScalar {
    let r = if radius > 0.0 {
        radius * rng.gen_range(2.0..4.0)
    } else {
        rng.gen_range(1.0..3.0)
    };
    ComplexScalar::from_polar(r, rng.gen_range(0.0..std::f64::consts::TAU))
}
