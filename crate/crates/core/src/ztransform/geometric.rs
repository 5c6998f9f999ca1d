//! Biquaternion geometric series `sum y^n` and its exact remainder.

use crate::biquat::Biquaternion;
use crate::error::{Error, Result};

fn check_domain(y: &Biquaternion) -> Result<()> {
    let real_norm = y.real_norm();
    let spectral_radius = y.spectral_radius();
    if real_norm < 1.0 && spectral_radius < 1.0 {
        Ok(())
    } else {
        Err(Error::DivergentSeries {
            real_norm,
            spectral_radius,
        })
    }
}

/// `sum_{n>=0} y^n = (1 - y)^-1`.
pub fn geometric_sum(y: &Biquaternion) -> Result<Biquaternion> {
    check_domain(y)?;
    (Biquaternion::ONE - *y).inverse()
}

/// `S_N(y) = 1 + y + ... + y^(N-1)`.
pub fn partial_sum(y: &Biquaternion, n: usize) -> Biquaternion {
    let mut sum = Biquaternion::ZERO;
    let mut power = Biquaternion::ONE;
    for _ in 0..n {
        sum += power;
        power *= *y;
    }
    sum
}

/// Real norm of the remainder `S - S_N = (1 - y)^-1 y^N`, which by
/// multiplicativity equals `||(1 - y)^-1|| * ||y||^N`.
pub fn geometric_remainder(y: &Biquaternion, n: usize) -> Result<f64> {
    let sum = geometric_sum(y)?;
    Ok(sum.real_norm() * y.real_norm().powi(n as i32))
}
