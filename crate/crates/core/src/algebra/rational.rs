//! Rational functions in one complex variable.

use num_complex::Complex64;
use std::fmt;

use super::poly::PolyC;
use crate::error::{Error, Result};

/// Quotient of two polynomials, kept in reduced form: common factors are
/// cancelled (floating-point Euclid with a relative zero threshold) and the
/// denominator is monic. The zero function is allowed; a zero denominator is
/// not.
#[derive(Clone, Debug, PartialEq)]
pub struct RationalC {
    num: PolyC,
    den: PolyC,
}

impl RationalC {
    pub fn new(num: PolyC, den: PolyC) -> Result<Self> {
        if den.is_zero() {
            return Err(Error::ZeroDenominator);
        }
        Ok(reduce(num, den))
    }

    pub fn from_poly(p: PolyC) -> Self {
        RationalC { num: p, den: PolyC::one() }
    }

    pub fn num(&self) -> &PolyC {
        &self.num
    }

    pub fn den(&self) -> &PolyC {
        &self.den
    }

    pub fn is_zero(&self) -> bool {
        self.num.is_zero()
    }

    pub fn eval(&self, z: Complex64) -> Complex64 {
        self.num.eval(z) / self.den.eval(z)
    }

    pub fn mul_poly(&self, p: &PolyC) -> Self {
        reduce(&self.num * p, self.den.clone())
    }

    pub fn mul(&self, other: &RationalC) -> Self {
        reduce(&self.num * &other.num, &self.den * &other.den)
    }

    pub fn add(&self, other: &RationalC) -> Self {
        let num = &(&self.num * &other.den) + &(&other.num * &self.den);
        reduce(num, &self.den * &other.den)
    }

    pub fn neg(&self) -> Self {
        RationalC { num: -&self.num, den: self.den.clone() }
    }

    /// Quotient-rule derivative, reduced.
    pub fn derivative(&self) -> Self {
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        reduce(num, &self.den * &self.den)
    }

    /// `df/f` for `f` given as a rational function: `(n'd - nd')/(nd)`.
    pub fn log_derivative(&self) -> Result<Self> {
        if self.num.is_zero() {
            return Err(Error::ZeroInput("log-derivative argument"));
        }
        let num = &(&self.num.derivative() * &self.den) - &(&self.num * &self.den.derivative());
        Ok(reduce(num, &self.num * &self.den))
    }

    /// Order of vanishing at a finite point: multiplicity of `z0` as a root
    /// of the numerator minus its multiplicity in the denominator.
    pub fn ord_at(&self, z0: Complex64) -> i64 {
        multiplicity_at(&self.num, z0) as i64 - multiplicity_at(&self.den, z0) as i64
    }

    /// Order of vanishing at infinity: `deg den - deg num`.
    pub fn ord_at_infinity(&self) -> i64 {
        let dn = self.num.degree().map_or(0, |d| d as i64);
        let dd = self.den.degree().map_or(0, |d| d as i64);
        dd - dn
    }
}

impl fmt::Display for RationalC {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.den == PolyC::one() {
            write!(f, "{}", self.num)
        } else {
            write!(f, "({}) / ({})", self.num, self.den)
        }
    }
}

/// Multiplicity of `z0` as a root of `p`, by repeated synthetic division.
/// A residual test relative to the all-positive evaluation decides "is a
/// root" in floating point.
pub(crate) fn multiplicity_at(p: &PolyC, z0: Complex64) -> usize {
    let mut cur = p.clone();
    let mut m = 0;
    let lin = PolyC::new(vec![-z0, Complex64::ONE]);
    while let Some(d) = cur.degree() {
        if d == 0 {
            break;
        }
        let scale = cur.eval_abs(z0.norm()).max(cur.max_coeff_norm());
        if cur.eval(z0).norm() > 1e-9 * scale.max(f64::MIN_POSITIVE) {
            break;
        }
        let (q, _) = cur.div_rem(&lin);
        cur = q;
        m += 1;
    }
    m
}

fn reduce(num: PolyC, den: PolyC) -> RationalC {
    if num.is_zero() {
        return RationalC { num: PolyC::zero(), den: PolyC::one() };
    }
    let g = poly_gcd(&num, &den);
    let (num, den) = if g.degree().is_some_and(|d| d >= 1) {
        (num.div_rem(&g).0, den.div_rem(&g).0)
    } else {
        (num, den)
    };
    // Monic denominator fixes the representative.
    let lead = den.leading().expect("denominator became zero during reduction");
    RationalC {
        num: num.scale(1.0 / lead),
        den: den.scale(1.0 / lead),
    }
}

/// Euclidean gcd with a relative threshold for declaring remainders zero.
/// Remainders are renormalized each round to keep the coefficients tame.
fn poly_gcd(a: &PolyC, b: &PolyC) -> PolyC {
    let mut a = normalize(a.clone());
    let mut b = normalize(b.clone());
    if a.degree() < b.degree() {
        std::mem::swap(&mut a, &mut b);
    }
    while !b.is_zero() {
        let (_, mut r) = a.div_rem(&b);
        let scale = a.max_coeff_norm().max(b.max_coeff_norm());
        if r.max_coeff_norm() <= 1e-12 * scale {
            r = PolyC::zero();
        }
        a = b;
        b = normalize(r);
    }
    a
}

fn normalize(p: PolyC) -> PolyC {
    match p.leading() {
        Some(l) => p.scale(1.0 / l),
        None => p,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn reduction_cancels_common_factor() {
        // (z^2 - 1)/(z - 1) reduces to z + 1
        let num = PolyC::from_real(&[-1.0, 0.0, 1.0]);
        let den = PolyC::from_real(&[-1.0, 1.0]);
        let r = RationalC::new(num, den).unwrap();
        assert_eq!(r.den().degree(), Some(0));
        assert!((r.eval(c(3.0, 0.0)) - c(4.0, 0.0)).norm() < 1e-12);
    }

    #[test]
    fn zero_denominator_rejected() {
        assert!(matches!(
            RationalC::new(PolyC::one(), PolyC::zero()),
            Err(Error::ZeroDenominator)
        ));
    }

    #[test]
    fn orders_at_points_and_infinity() {
        // g = (z^2 + 1)/z
        let g = RationalC::new(PolyC::from_real(&[1.0, 0.0, 1.0]), PolyC::from_real(&[0.0, 1.0]))
            .unwrap();
        assert_eq!(g.ord_at(c(0.0, 1.0)), 1);
        assert_eq!(g.ord_at(c(0.0, -1.0)), 1);
        assert_eq!(g.ord_at(Complex64::ZERO), -1);
        assert_eq!(g.ord_at_infinity(), -1);
        // ord of z at infinity is -1 in the local coordinate w = 1/z
        let z = RationalC::from_poly(PolyC::from_real(&[0.0, 1.0]));
        assert_eq!(z.ord_at_infinity(), -1);
    }

    #[test]
    fn log_derivative_of_z() {
        let z = RationalC::from_poly(PolyC::from_real(&[0.0, 1.0]));
        let ld = z.log_derivative().unwrap();
        // 1/z
        assert!((ld.eval(c(2.0, 0.0)) - c(0.5, 0.0)).norm() < 1e-14);
        assert_eq!(ld.ord_at(Complex64::ZERO), -1);
    }

    #[test]
    fn zero_function_is_allowed() {
        let r = RationalC::new(PolyC::zero(), PolyC::from_real(&[1.0, 2.0])).unwrap();
        assert!(r.is_zero());
        assert!(r.log_derivative().is_err());
    }
}
