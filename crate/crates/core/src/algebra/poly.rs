//! Dense complex-coefficient polynomials.

use num_complex::Complex64;
use std::fmt;
use std::ops::{Add, Mul, Neg, Sub};

/// Polynomial over the complex numbers, `coeffs[k]` holding the coefficient
/// of `z^k`. Trailing zero coefficients are trimmed on construction, so the
/// leading coefficient of a nonzero polynomial is nonzero and equality is
/// structural. The zero polynomial has an empty coefficient vector and its
/// degree is `None` rather than any numeric sentinel.
#[derive(Clone, Debug, PartialEq)]
pub struct PolyC {
    coeffs: Vec<Complex64>,
}

impl PolyC {
    pub fn new(mut coeffs: Vec<Complex64>) -> Self {
        while coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            coeffs.pop();
        }
        PolyC { coeffs }
    }

    pub fn zero() -> Self {
        PolyC { coeffs: Vec::new() }
    }

    pub fn one() -> Self {
        PolyC::constant(Complex64::new(1.0, 0.0))
    }

    pub fn constant(c: Complex64) -> Self {
        PolyC::new(vec![c])
    }

    /// `c * z^k`.
    pub fn monomial(k: usize, c: Complex64) -> Self {
        let mut coeffs = vec![Complex64::ZERO; k + 1];
        coeffs[k] = c;
        PolyC::new(coeffs)
    }

    pub fn from_real(coeffs: &[f64]) -> Self {
        PolyC::new(coeffs.iter().map(|&x| Complex64::new(x, 0.0)).collect())
    }

    pub fn is_zero(&self) -> bool {
        self.coeffs.is_empty()
    }

    /// Degree, or `None` for the zero polynomial.
    pub fn degree(&self) -> Option<usize> {
        if self.coeffs.is_empty() {
            None
        } else {
            Some(self.coeffs.len() - 1)
        }
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    /// Coefficient of `z^k`; zero beyond the stored range.
    pub fn coeff(&self, k: usize) -> Complex64 {
        self.coeffs.get(k).copied().unwrap_or(Complex64::ZERO)
    }

    pub fn leading(&self) -> Option<Complex64> {
        self.coeffs.last().copied()
    }

    pub fn max_coeff_norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm()).fold(0.0, f64::max)
    }

    /// Horner evaluation.
    pub fn eval(&self, z: Complex64) -> Complex64 {
        let mut acc = Complex64::ZERO;
        for &c in self.coeffs.iter().rev() {
            acc = acc * z + c;
        }
        acc
    }

    /// Evaluation with every coefficient replaced by its modulus; an upper
    /// bound for `|p(z)|` on `|z| = r`.
    pub fn eval_abs(&self, r: f64) -> f64 {
        let mut acc = 0.0;
        for c in self.coeffs.iter().rev() {
            acc = acc * r + c.norm();
        }
        acc
    }

    pub fn derivative(&self) -> PolyC {
        if self.coeffs.len() <= 1 {
            return PolyC::zero();
        }
        let coeffs = self
            .coeffs
            .iter()
            .enumerate()
            .skip(1)
            .map(|(k, &c)| c * k as f64)
            .collect();
        PolyC::new(coeffs)
    }

    /// Composition with the affine map `z -> a z + b`.
    pub fn compose_affine(&self, a: Complex64, b: Complex64) -> PolyC {
        let mut acc = PolyC::zero();
        let affine = PolyC::new(vec![b, a]);
        for &c in self.coeffs.iter().rev() {
            acc = &(&acc * &affine) + &PolyC::constant(c);
        }
        acc
    }

    pub fn scale(&self, c: Complex64) -> PolyC {
        PolyC::new(self.coeffs.iter().map(|&a| a * c).collect())
    }

    /// Multiplication by `z^k`.
    pub fn shift_up(&self, k: usize) -> PolyC {
        if self.is_zero() {
            return PolyC::zero();
        }
        let mut coeffs = vec![Complex64::ZERO; k];
        coeffs.extend_from_slice(&self.coeffs);
        PolyC::new(coeffs)
    }

    /// Coefficient reversal: `z^deg * p(1/z)`. Zero maps to zero.
    pub fn reversed(&self) -> PolyC {
        let mut coeffs = self.coeffs.clone();
        coeffs.reverse();
        PolyC::new(coeffs)
    }

    /// Euclidean division, returning `(quotient, remainder)`.
    ///
    /// Panics if `divisor` is zero.
    pub fn div_rem(&self, divisor: &PolyC) -> (PolyC, PolyC) {
        let dd = divisor.degree().expect("division by the zero polynomial");
        let lead = divisor.coeffs[dd];
        let mut rem = self.coeffs.clone();
        let mut quot = vec![Complex64::ZERO; self.coeffs.len().saturating_sub(dd)];
        while rem.len() > dd {
            let k = rem.len() - 1;
            let q = rem[k] / lead;
            quot[k - dd] = q;
            for j in 0..=dd {
                let v = divisor.coeffs[j] * q;
                rem[k - dd + j] -= v;
            }
            rem.pop();
        }
        (PolyC::new(quot), PolyC::new(rem))
    }
}

impl Add for &PolyC {
    type Output = PolyC;
    fn add(self, rhs: &PolyC) -> PolyC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) + rhs.coeff(k)).collect();
        PolyC::new(coeffs)
    }
}

impl Sub for &PolyC {
    type Output = PolyC;
    fn sub(self, rhs: &PolyC) -> PolyC {
        let n = self.coeffs.len().max(rhs.coeffs.len());
        let coeffs = (0..n).map(|k| self.coeff(k) - rhs.coeff(k)).collect();
        PolyC::new(coeffs)
    }
}

impl Neg for &PolyC {
    type Output = PolyC;
    fn neg(self) -> PolyC {
        PolyC::new(self.coeffs.iter().map(|&c| -c).collect())
    }
}

impl Mul for &PolyC {
    type Output = PolyC;
    fn mul(self, rhs: &PolyC) -> PolyC {
        if self.is_zero() || rhs.is_zero() {
            return PolyC::zero();
        }
        let mut coeffs = vec![Complex64::ZERO; self.coeffs.len() + rhs.coeffs.len() - 1];
        for (i, &a) in self.coeffs.iter().enumerate() {
            for (j, &b) in rhs.coeffs.iter().enumerate() {
                coeffs[i + j] += a * b;
            }
        }
        PolyC::new(coeffs)
    }
}

impl fmt::Display for PolyC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_zero() {
            return write!(f, "0");
        }
        let mut first = true;
        for (k, &c) in self.coeffs.iter().enumerate().rev() {
            if c == Complex64::ZERO {
                continue;
            }
            if !first {
                write!(f, " + ")?;
            }
            first = false;
            let coef = if c.im == 0.0 {
                format!("{}", c.re)
            } else {
                format!("({},{})", c.re, c.im)
            };
            match k {
                0 => write!(f, "{coef}")?,
                1 => write!(f, "{coef}*z")?,
                _ => write!(f, "{coef}*z^{k}")?,
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn derivative_power_rule() {
        let p = PolyC::monomial(2, c(1.0, 0.0));
        assert_eq!(p.derivative(), PolyC::monomial(1, c(2.0, 0.0)));
    }

    #[test]
    fn derivative_of_constant_is_zero() {
        let p = PolyC::constant(c(3.5, -1.0));
        assert!(p.derivative().is_zero());
        assert_eq!(p.derivative().degree(), None);
    }

    #[test]
    fn product_difference_of_squares() {
        let a = PolyC::from_real(&[1.0, 1.0]); // z + 1
        let b = PolyC::from_real(&[-1.0, 1.0]); // z - 1
        assert_eq!(&a * &b, PolyC::from_real(&[-1.0, 0.0, 1.0]));
    }

    #[test]
    fn trimming_makes_equality_structural() {
        let a = PolyC::new(vec![c(1.0, 0.0), c(0.0, 0.0), c(0.0, 0.0)]);
        let b = PolyC::constant(c(1.0, 0.0));
        assert_eq!(a, b);
        assert_eq!(a.degree(), Some(0));
    }

    #[test]
    fn zero_polynomial_degree_is_sentinel() {
        assert_eq!(PolyC::zero().degree(), None);
        assert_eq!(PolyC::new(vec![c(0.0, 0.0)]).degree(), None);
    }

    #[test]
    fn compose_affine_matches_eval() {
        let p = PolyC::new(vec![c(1.0, 2.0), c(0.0, -1.0), c(3.0, 0.0)]);
        let (a, b) = (c(2.0, 1.0), c(-1.0, 0.5));
        let q = p.compose_affine(a, b);
        for t in [c(0.3, -0.2), c(1.0, 1.0), c(-2.0, 0.1)] {
            let lhs = q.eval(t);
            let rhs = p.eval(a * t + b);
            assert!((lhs - rhs).norm() < 1e-12 * (1.0 + rhs.norm()));
        }
    }

    #[test]
    fn div_rem_reconstructs() {
        let a = PolyC::from_real(&[2.0, -3.0, 0.0, 1.0, 4.0]);
        let b = PolyC::from_real(&[1.0, 2.0, 1.0]);
        let (q, r) = a.div_rem(&b);
        let back = &(&q * &b) + &r;
        for k in 0..5 {
            assert!((back.coeff(k) - a.coeff(k)).norm() < 1e-12);
        }
        assert!(r.degree().is_none_or(|d| d < 2));
    }
}
