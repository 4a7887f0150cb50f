//! Dense univariate polynomials over a base PID.

use std::fmt;

use super::pid::Pid;
use super::RingError;

/// Polynomials in `x` over `P`, coefficients low degree first.
#[derive(Clone, PartialEq, Eq)]
pub struct Poly<P: Pid> {
    base: P,
    coeffs: Vec<P::Elem>,
}

impl<P: Pid> Poly<P> {
    pub fn new(base: P, mut coeffs: Vec<P::Elem>) -> Self {
        while coeffs.last().is_some_and(|c| base.is_zero(c)) {
            coeffs.pop();
        }
        Poly { base, coeffs }
    }

    pub fn zero(base: P) -> Self {
        Poly {
            base,
            coeffs: vec![],
        }
    }

    pub fn constant(base: P, c: P::Elem) -> Self {
        Self::new(base, vec![c])
    }

    pub fn base(&self) -> &P {
        &self.base
    }

    pub fn coeffs(&self) -> &[P::Elem] {
        &self.coeffs
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        self.coeffs.len().checked_sub(1)
    }

    pub fn is_constant(&self) -> bool {
        self.coeffs.len() <= 1
    }

    pub fn mul(&self, other: &Self) -> Self {
        if self.is_zero() || other.is_zero() {
            return Self::zero(self.base.clone());
        }
        let b = &self.base;
        let mut out = vec![b.zero(); self.coeffs.len() + other.coeffs.len() - 1];
        for (i, x) in self.coeffs.iter().enumerate() {
            for (j, y) in other.coeffs.iter().enumerate() {
                out[i + j] = b.add(&out[i + j], &b.mul(x, y));
            }
        }
        Self::new(b.clone(), out)
    }

    pub fn add(&self, other: &Self) -> Self {
        let b = &self.base;
        let n = self.coeffs.len().max(other.coeffs.len());
        let z = b.zero();
        let out = (0..n)
            .map(|i| b.add(self.coeffs.get(i).unwrap_or(&z), other.coeffs.get(i).unwrap_or(&z)))
            .collect();
        Self::new(b.clone(), out)
    }

    /// Normalized gcd of the coefficients.
    pub fn content(&self) -> Result<P::Elem, RingError> {
        if self.is_zero() {
            return Err(RingError::ZeroPolynomial);
        }
        let b = &self.base;
        Ok(self.coeffs.iter().fold(b.zero(), |g, c| b.gcd(&g, c)))
    }

    /// Coefficients reduced modulo a prime of the base, trailing zeros
    /// removed.
    pub fn reduce_mod(&self, prime: &P::Elem) -> Vec<P::Elem> {
        let b = &self.base;
        let mut v: Vec<P::Elem> = self.coeffs.iter().map(|c| b.rem(c, prime)).collect();
        while v.last().is_some_and(|c| b.is_zero(c)) {
            v.pop();
        }
        v
    }
}

impl<P: Pid> fmt::Display for Poly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let b = &self.base;
        let terms: Vec<String> = self
            .coeffs
            .iter()
            .enumerate()
            .rev()
            .filter(|(_, c)| !b.is_zero(c))
            .map(|(i, c)| {
                let c = b.show(c);
                let c = if c.contains(' ') { format!("({c})") } else { c };
                match i {
                    0 => c,
                    1 if c == "1" => "x".into(),
                    1 => format!("{c}x"),
                    _ if c == "1" => format!("x^{i}"),
                    _ => format!("{c}x^{i}"),
                }
            })
            .collect();
        write!(f, "{}", terms.join(" + "))
    }
}

impl<P: Pid> fmt::Debug for Poly<P> {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "Poly[{}]({})", self.base.name(), self)
    }
}
