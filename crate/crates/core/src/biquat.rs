//! Biquaternions: quaternions over the complex numbers.
//!
//! A value is `w + x i + y j + z k` with `w, x, y, z` complex. The complex unit
//! `I` commutes with the quaternion units, so `(I k)^2 = I^2 k^2 = 1` and the
//! algebra has zero divisors such as `1 + I k`.

use std::fmt;
use std::iter::Sum;
use std::ops::{Add, AddAssign, Div, Mul, MulAssign, Neg, Sub, SubAssign};

use num_complex::Complex64;

use crate::error::{Error, Result};

/// Complex scalar `re + im I`. `I` commutes with every quaternion unit.
pub type ComplexScalar = Complex64;

/// `inverse` rejects `q` when `|q conj(q)| < ZERO_DIVISOR_TOL * max(1, |q|_E^2)`.
pub const ZERO_DIVISOR_TOL: f64 = 1e-12;

/// Below this modulus of `vec_abs` the degenerate `|q| = 0` branch of
/// `exp`/`cos`/`sin` is used.
pub const DEGENERATE_VEC_TOL: f64 = 1e-10;

/// Builds a complex scalar, rejecting non-finite parts.
pub fn complex(re: f64, im: f64) -> Result<ComplexScalar> {
    if re.is_finite() && im.is_finite() {
        Ok(Complex64::new(re, im))
    } else {
        Err(Error::NonFinite)
    }
}

/// Principal square root: non-negative real part, and non-negative imaginary
/// part when the real part is zero.
pub fn principal_sqrt(z: ComplexScalar) -> ComplexScalar {
    let r = z.sqrt();
    if r.re < 0.0 || (r.re == 0.0 && r.im < 0.0) {
        -r
    } else {
        r
    }
}

#[derive(Clone, Copy, Debug, Default, PartialEq)]
pub struct Biquaternion {
    /// Scalar part.
    pub w: ComplexScalar,
    /// Coefficient of `i`.
    pub x: ComplexScalar,
    /// Coefficient of `j`.
    pub y: ComplexScalar,
    /// Coefficient of `k`.
    pub z: ComplexScalar,
}

const C0: Complex64 = Complex64::new(0.0, 0.0);
const C1: Complex64 = Complex64::new(1.0, 0.0);
const CI: Complex64 = Complex64::new(0.0, 1.0);

impl Biquaternion {
    pub const ZERO: Self = Self::new(C0, C0, C0, C0);
    pub const ONE: Self = Self::new(C1, C0, C0, C0);
    /// The commuting complex unit `I`, embedded as a scalar.
    pub const CI: Self = Self::new(CI, C0, C0, C0);
    pub const I: Self = Self::new(C0, C1, C0, C0);
    pub const J: Self = Self::new(C0, C0, C1, C0);
    pub const K: Self = Self::new(C0, C0, C0, C1);

    pub const fn new(w: ComplexScalar, x: ComplexScalar, y: ComplexScalar, z: ComplexScalar) -> Self {
        Self { w, x, y, z }
    }

    /// Like [`Biquaternion::new`] but rejects non-finite components.
    pub fn try_new(
        w: ComplexScalar,
        x: ComplexScalar,
        y: ComplexScalar,
        z: ComplexScalar,
    ) -> Result<Self> {
        let q = Self::new(w, x, y, z);
        if q.is_finite() {
            Ok(q)
        } else {
            Err(Error::NonFinite)
        }
    }

    /// Real quaternion `w + x i + y j + z k`.
    pub const fn real(w: f64, x: f64, y: f64, z: f64) -> Self {
        Self::new(
            Complex64::new(w, 0.0),
            Complex64::new(x, 0.0),
            Complex64::new(y, 0.0),
            Complex64::new(z, 0.0),
        )
    }

    pub const fn scalar(c: ComplexScalar) -> Self {
        Self::new(c, C0, C0, C0)
    }

    /// Components in the order `w.re, w.im, x.re, x.im, y.re, y.im, z.re, z.im`.
    pub fn to_components(&self) -> [f64; 8] {
        [
            self.w.re, self.w.im, self.x.re, self.x.im, self.y.re, self.y.im, self.z.re, self.z.im,
        ]
    }

    pub fn from_components(c: [f64; 8]) -> Self {
        Self::new(
            Complex64::new(c[0], c[1]),
            Complex64::new(c[2], c[3]),
            Complex64::new(c[4], c[5]),
            Complex64::new(c[6], c[7]),
        )
    }

    pub fn is_finite(&self) -> bool {
        self.to_components().iter().all(|c| c.is_finite())
    }

    /// `Sc(q)`.
    pub fn scalar_part(&self) -> ComplexScalar {
        self.w
    }

    /// `Vec(q)` as a biquaternion with zero scalar part.
    pub fn vector_part(&self) -> Self {
        Self::new(C0, self.x, self.y, self.z)
    }

    pub fn is_scalar(&self) -> bool {
        self.x == C0 && self.y == C0 && self.z == C0
    }

    /// Quaternion conjugate: scalar part kept, vector part negated.
    pub fn conj(&self) -> Self {
        Self::new(self.w, -self.x, -self.y, -self.z)
    }

    /// Complex-valued squared norm `q conj(q) = w^2 + x^2 + y^2 + z^2`
    /// (complex squares). Vanishes on zero divisors.
    pub fn complex_norm_sq(&self) -> ComplexScalar {
        self.w * self.w + self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// Real-valued norm, the square root of `|q conj(q)|`.
    ///
    /// Multiplicative, but zero on zero divisors: it is a seminorm on the
    /// eight-dimensional space, not a norm.
    pub fn real_norm(&self) -> f64 {
        self.complex_norm_sq().norm().sqrt()
    }

    /// Euclidean length of the eight real components. This is a true norm
    /// and dominates [`Biquaternion::real_norm`].
    pub fn magnitude(&self) -> f64 {
        self.magnitude_sq().sqrt()
    }

    pub fn magnitude_sq(&self) -> f64 {
        self.w.norm_sqr() + self.x.norm_sqr() + self.y.norm_sqr() + self.z.norm_sqr()
    }

    /// Inverse `conj(q) / (q conj(q))`.
    pub fn inverse(&self) -> Result<Self> {
        let n = self.complex_norm_sq();
        let modulus = n.norm();
        if modulus.is_nan() || modulus < ZERO_DIVISOR_TOL * self.magnitude_sq().max(1.0) {
            return Err(Error::ZeroDivisor { modulus });
        }
        Ok(self.conj() * n.inv())
    }

    /// Principal square root of `x^2 + y^2 + z^2`.
    pub fn vec_abs(&self) -> ComplexScalar {
        principal_sqrt(self.x * self.x + self.y * self.y + self.z * self.z)
    }

    /// Largest modulus among the two eigenvalues `w ± I vec_abs(q)` of the
    /// complex 2x2 matrix image of `q`. `|q^n|^(1/n)` tends to this value, so
    /// it is the radius of convergence of `sum q^n x^-n` at complex `x`.
    pub fn spectral_radius(&self) -> f64 {
        let shift = CI * self.vec_abs();
        (self.w + shift).norm().max((self.w - shift).norm())
    }

    /// `q^n` by repeated squaring.
    pub fn pow(&self, n: u64) -> Self {
        let mut result = Self::ONE;
        let mut base = *self;
        let mut e = n;
        while e > 0 {
            if e & 1 == 1 {
                result *= base;
            }
            e >>= 1;
            if e > 0 {
                base = base * base;
            }
        }
        result
    }

    /// Biquaternion exponential.
    ///
    /// `e^w (cos|v| + sgn(v) sin|v|)` with `|v| = vec_abs`, falling back to
    /// `e^w (1 + v)` when `|v|` vanishes (then `v^2 = 0`).
    pub fn exp(&self) -> Self {
        let ew = self.w.exp();
        let v = self.vector_part();
        let r = self.vec_abs();
        if r.norm() < DEGENERATE_VEC_TOL {
            return (Self::ONE + v) * ew;
        }
        let sgn = v * r.inv();
        (Self::scalar(r.cos()) + sgn * r.sin()) * ew
    }

    /// `cos(q n)`.
    ///
    /// With `u = Vec(q)/|Vec(q)|` (so `u^2 = -1` and `u q = q u`) this is
    /// `(e^{u q n} + e^{-u q n}) / 2`; when `|Vec(q)|` vanishes it is
    /// `cos(w n) - Vec(q) n sin(w n)`.
    pub fn cos_seq_term(&self, n: u64) -> Self {
        let nf = n as f64;
        match self.vec_sign() {
            None => {
                let t = self.w * nf;
                Self::scalar(t.cos()) - self.vector_part() * (t.sin() * nf)
            }
            Some(u) => {
                let (plus, minus) = self.rotated_exps(u, nf);
                (plus + minus) * 0.5
            }
        }
    }

    /// `sin(q n)`: `-(1/2) u (e^{u q n} - e^{-u q n})`, or
    /// `sin(w n) + Vec(q) n cos(w n)` when `|Vec(q)|` vanishes.
    pub fn sin_seq_term(&self, n: u64) -> Self {
        let nf = n as f64;
        match self.vec_sign() {
            None => {
                let t = self.w * nf;
                Self::scalar(t.sin()) + self.vector_part() * (t.cos() * nf)
            }
            Some(u) => {
                let (plus, minus) = self.rotated_exps(u, nf);
                u * (plus - minus) * -0.5
            }
        }
    }

    /// `Vec(q) / vec_abs(q)`, or `None` on the degenerate branch.
    pub fn vec_sign(&self) -> Option<Self> {
        let r = self.vec_abs();
        (r.norm() >= DEGENERATE_VEC_TOL).then(|| self.vector_part() * r.inv())
    }

    fn rotated_exps(&self, u: Self, n: f64) -> (Self, Self) {
        let arg = u * *self * n;
        (arg.exp(), (-arg).exp())
    }
}

impl From<ComplexScalar> for Biquaternion {
    fn from(c: ComplexScalar) -> Self {
        Self::scalar(c)
    }
}

impl From<f64> for Biquaternion {
    fn from(r: f64) -> Self {
        Self::scalar(Complex64::new(r, 0.0))
    }
}

impl Add for Biquaternion {
    type Output = Self;
    fn add(self, o: Self) -> Self {
        Self::new(self.w + o.w, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl Sub for Biquaternion {
    type Output = Self;
    fn sub(self, o: Self) -> Self {
        Self::new(self.w - o.w, self.x - o.x, self.y - o.y, self.z - o.z)
    }
}

impl Neg for Biquaternion {
    type Output = Self;
    fn neg(self) -> Self {
        Self::new(-self.w, -self.x, -self.y, -self.z)
    }
}

impl AddAssign for Biquaternion {
    fn add_assign(&mut self, o: Self) {
        *self = *self + o;
    }
}

impl SubAssign for Biquaternion {
    fn sub_assign(&mut self, o: Self) {
        *self = *self - o;
    }
}

/// Hamilton product `p0 q0 - (p,q) + p0 q + q0 p + p x q`.
impl Mul for Biquaternion {
    type Output = Self;
    fn mul(self, q: Self) -> Self {
        let p = self;
        Self::new(
            p.w * q.w - p.x * q.x - p.y * q.y - p.z * q.z,
            p.w * q.x + p.x * q.w + p.y * q.z - p.z * q.y,
            p.w * q.y + p.y * q.w + p.z * q.x - p.x * q.z,
            p.w * q.z + p.z * q.w + p.x * q.y - p.y * q.x,
        )
    }
}

impl MulAssign for Biquaternion {
    fn mul_assign(&mut self, o: Self) {
        *self = *self * o;
    }
}

impl Mul<ComplexScalar> for Biquaternion {
    type Output = Self;
    fn mul(self, c: ComplexScalar) -> Self {
        Self::new(self.w * c, self.x * c, self.y * c, self.z * c)
    }
}

impl Mul<f64> for Biquaternion {
    type Output = Self;
    fn mul(self, c: f64) -> Self {
        Self::new(self.w * c, self.x * c, self.y * c, self.z * c)
    }
}

impl Div<f64> for Biquaternion {
    type Output = Self;
    fn div(self, c: f64) -> Self {
        Self::new(self.w / c, self.x / c, self.y / c, self.z / c)
    }
}

impl Sum for Biquaternion {
    fn sum<It: Iterator<Item = Self>>(iter: It) -> Self {
        iter.fold(Self::ZERO, Add::add)
    }
}

impl fmt::Display for Biquaternion {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&crate::literal::format_literal(self))
    }
}
