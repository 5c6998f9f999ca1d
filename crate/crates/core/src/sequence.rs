use std::fmt;
use std::sync::{Arc, Mutex};

use crate::biquat::Biquaternion;

type TermFn = dyn Fn(usize) -> Biquaternion + Send + Sync;

/// A biquaternion sequence `f_0, f_1, ...` evaluated on demand.
///
/// Term functions must be deterministic. `radius_hint` carries the radius of
/// convergence of the transform when it is known analytically.
#[derive(Clone)]
pub struct Sequence {
    term: Arc<TermFn>,
    radius_hint: Option<f64>,
}

impl fmt::Debug for Sequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("Sequence")
            .field("radius_hint", &self.radius_hint)
            .field("head", &self.prefix(4))
            .finish()
    }
}

impl Sequence {
    pub fn new(term: impl Fn(usize) -> Biquaternion + Send + Sync + 'static) -> Self {
        Self {
            term: Arc::new(term),
            radius_hint: None,
        }
    }

    pub fn with_radius_hint(mut self, radius: f64) -> Self {
        self.radius_hint = Some(radius);
        self
    }

    pub fn without_radius_hint(mut self) -> Self {
        self.radius_hint = None;
        self
    }

    pub fn radius_hint(&self) -> Option<f64> {
        self.radius_hint
    }

    pub fn term(&self, n: usize) -> Biquaternion {
        (self.term)(n)
    }

    pub fn prefix(&self, len: usize) -> Vec<Biquaternion> {
        (0..len).map(|n| self.term(n)).collect()
    }

    pub fn zero() -> Self {
        Self::constant(Biquaternion::ZERO)
    }

    pub fn constant(c: Biquaternion) -> Self {
        let radius = if c == Biquaternion::ZERO { 0.0 } else { 1.0 };
        Self::new(move |_| c).with_radius_hint(radius)
    }

    /// Unit impulse: `1` at `n = 0`, zero elsewhere.
    pub fn delta() -> Self {
        Self::new(|n| if n == 0 { Biquaternion::ONE } else { Biquaternion::ZERO })
            .with_radius_hint(0.0)
    }

    /// `p^n`.
    pub fn geometric(p: Biquaternion) -> Self {
        Self::new(move |n| p.pow(n as u64)).with_radius_hint(p.spectral_radius())
    }

    /// Finite sequence, zero past the supplied terms.
    pub fn from_terms(terms: Vec<Biquaternion>) -> Self {
        Self::new(move |n| terms.get(n).copied().unwrap_or(Biquaternion::ZERO))
            .with_radius_hint(0.0)
    }

    /// Sequence whose term `n` is produced from all earlier terms, memoized.
    pub fn generated(
        next: impl Fn(usize, &[Biquaternion]) -> Biquaternion + Send + Sync + 'static,
    ) -> Self {
        let cache: Mutex<Vec<Biquaternion>> = Mutex::new(Vec::new());
        Self::new(move |n| {
            let mut terms = cache.lock().unwrap_or_else(|e| e.into_inner());
            while terms.len() <= n {
                let value = next(terms.len(), &terms);
                terms.push(value);
            }
            terms[n]
        })
    }

    /// Termwise map preserving the radius hint.
    pub fn map(&self, f: impl Fn(usize, Biquaternion) -> Biquaternion + Send + Sync + 'static) -> Self {
        let inner = self.clone();
        let out = Self::new(move |n| f(n, inner.term(n)));
        match self.radius_hint {
            Some(r) => out.with_radius_hint(r),
            None => out,
        }
    }

    /// `n -> f_{n+k}`.
    pub fn advanced(&self, k: usize) -> Self {
        let inner = self.clone();
        let out = Self::new(move |n| inner.term(n + k));
        match self.radius_hint {
            Some(r) => out.with_radius_hint(r),
            None => out,
        }
    }

    /// `n -> f_{n-k}` for `n >= k`, zero before.
    pub fn delayed(&self, k: usize) -> Self {
        let inner = self.clone();
        let out = Self::new(move |n| if n >= k { inner.term(n - k) } else { Biquaternion::ZERO });
        match self.radius_hint {
            Some(r) => out.with_radius_hint(r),
            None => out,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn generated_is_memoized_and_deterministic() {
        let fib = Sequence::generated(|n, prev| match n {
            0 | 1 => Biquaternion::ONE,
            _ => prev[n - 1] + prev[n - 2],
        });
        assert_eq!(fib.term(10), Biquaternion::from(89.0));
        assert_eq!(fib.term(3), Biquaternion::from(3.0));
        assert_eq!(fib.term(10), fib.clone().term(10));
    }

    #[test]
    fn shifts() {
        let s = Sequence::new(|n| Biquaternion::from(n as f64));
        assert_eq!(s.advanced(2).prefix(3), s.prefix(5)[2..].to_vec());
        assert_eq!(s.delayed(2).term(1), Biquaternion::ZERO);
        assert_eq!(s.delayed(2).term(5), s.term(3));
    }

    #[test]
    fn sequences_cross_threads() {
        let s = Sequence::geometric(Biquaternion::I);
        let handle = {
            let s = s.clone();
            std::thread::spawn(move || s.term(3))
        };
        assert_eq!(handle.join().unwrap(), -Biquaternion::I);
    }
}
