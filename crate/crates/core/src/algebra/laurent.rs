//! Truncated Laurent coefficient windows.

use num_complex::Complex64;

use super::poly::PolyC;
use super::rational::RationalC;
use crate::error::{Error, Result};

/// A window of Laurent coefficients: the coefficients of `z^k` for
/// `lo <= k <= hi`. Coefficients outside the window are unknown unless a
/// constructor states otherwise; `tail_bound` bounds the absolute sum of
/// coefficients a stated use omits (zero for the exact constructors here).
#[derive(Clone, Debug, PartialEq)]
pub struct LaurentWindow {
    lo: i64,
    hi: i64,
    coeffs: Vec<Complex64>,
    tail_bound: f64,
}

impl LaurentWindow {
    /// Window starting at power `lo` with the given consecutive coefficients.
    ///
    /// Panics on an empty coefficient list.
    pub fn new(lo: i64, coeffs: Vec<Complex64>) -> Self {
        assert!(!coeffs.is_empty(), "a window needs at least one coefficient");
        let hi = lo + coeffs.len() as i64 - 1;
        LaurentWindow { lo, hi, coeffs, tail_bound: 0.0 }
    }

    pub fn lo(&self) -> i64 {
        self.lo
    }

    pub fn hi(&self) -> i64 {
        self.hi
    }

    pub fn tail_bound(&self) -> f64 {
        self.tail_bound
    }

    /// Coefficient of `z^k`; zero outside the window. Callers that care
    /// about the unknown-versus-zero distinction should range-check first.
    pub fn coeff(&self, k: i64) -> Complex64 {
        if k < self.lo || k > self.hi {
            Complex64::ZERO
        } else {
            self.coeffs[(k - self.lo) as usize]
        }
    }

    /// Polynomial coefficients viewed as a window on `[0, hi]`, padding with
    /// exact zeros above the degree.
    pub fn from_poly(p: &PolyC, hi: i64) -> Self {
        assert!(hi >= 0);
        let coeffs = (0..=hi).map(|k| p.coeff(k as usize)).collect();
        LaurentWindow::new(0, coeffs)
    }

    /// Laurent expansion of a rational function about the origin, exact on
    /// `[ord_0, hi]`.
    pub fn from_rational(r: &RationalC, hi: i64) -> Result<Self> {
        if r.is_zero() {
            return Ok(LaurentWindow::new(hi.min(0), vec![Complex64::ZERO; (hi - hi.min(0) + 1) as usize]));
        }
        // Peel exact powers of z from both sides: num = z^a n0, den = z^b d0.
        let peel = |p: &PolyC| -> (usize, PolyC) {
            let mut k = 0;
            while p.coeff(k) == Complex64::ZERO {
                k += 1;
            }
            (k, PolyC::new(p.coeffs()[k..].to_vec()))
        };
        let (a, n0) = peel(r.num());
        let (b, d0) = peel(r.den());
        let lo = a as i64 - b as i64;
        if hi < lo {
            return Err(Error::WindowTooShort { hi, needed: lo });
        }
        let order = (hi - lo) as usize;
        // Power-series division n0/d0 up to `order`.
        let d00 = d0.coeff(0);
        let mut q = vec![Complex64::ZERO; order + 1];
        for j in 0..=order {
            let mut s = n0.coeff(j);
            for (i, &qi) in q.iter().enumerate().take(j) {
                s -= qi * d0.coeff(j - i);
            }
            q[j] = s / d00;
        }
        Ok(LaurentWindow::new(lo, q))
    }

    /// Shift by `z^k`: exact on windows.
    pub fn shifted(&self, k: i64) -> Self {
        LaurentWindow { lo: self.lo + k, hi: self.hi + k, coeffs: self.coeffs.clone(), tail_bound: self.tail_bound }
    }

    /// Extend the window upward with exact zeros. The caller asserts that
    /// the underlying series genuinely has no terms in `(hi, new_hi]`.
    pub fn pad_zeros_above(&self, new_hi: i64) -> Self {
        assert!(new_hi >= self.hi);
        let mut coeffs = self.coeffs.clone();
        coeffs.resize((new_hi - self.lo + 1) as usize, Complex64::ZERO);
        LaurentWindow { lo: self.lo, hi: new_hi, coeffs, tail_bound: self.tail_bound }
    }

    /// Drop coefficients below `new_lo`.
    pub fn truncated_below(&self, new_lo: i64) -> Self {
        if new_lo <= self.lo {
            return self.clone();
        }
        assert!(new_lo <= self.hi);
        LaurentWindow {
            lo: new_lo,
            hi: self.hi,
            coeffs: self.coeffs[(new_lo - self.lo) as usize..].to_vec(),
            tail_bound: self.tail_bound,
        }
    }

    /// Sum on the common window.
    pub fn add(&self, other: &LaurentWindow) -> Self {
        let lo = self.lo.max(other.lo);
        let hi = self.hi.min(other.hi);
        assert!(lo <= hi, "windows do not overlap");
        let coeffs = (lo..=hi).map(|k| self.coeff(k) + other.coeff(k)).collect();
        LaurentWindow { lo, hi, coeffs, tail_bound: self.tail_bound + other.tail_bound }
    }

    /// Product, restricted to the powers both operands fully determine:
    /// `[a.lo + b.lo, min(a.hi + b.lo, b.hi + a.lo)]`. Powers above that
    /// could receive contributions from coefficients outside a window.
    pub fn mul(&self, other: &LaurentWindow) -> Self {
        let lo = self.lo + other.lo;
        let hi = (self.hi + other.lo).min(other.hi + self.lo);
        assert!(lo <= hi, "product window is empty");
        let mut coeffs = vec![Complex64::ZERO; (hi - lo + 1) as usize];
        for (i, &a) in self.coeffs.iter().enumerate() {
            let pa = self.lo + i as i64;
            for (j, &b) in other.coeffs.iter().enumerate() {
                let p = pa + other.lo + j as i64;
                if p >= lo && p <= hi {
                    coeffs[(p - lo) as usize] += a * b;
                }
            }
        }
        LaurentWindow { lo, hi, coeffs, tail_bound: 0.0 }
    }

    pub fn scale(&self, c: Complex64) -> Self {
        LaurentWindow {
            lo: self.lo,
            hi: self.hi,
            coeffs: self.coeffs.iter().map(|&a| a * c).collect(),
            tail_bound: self.tail_bound * c.norm(),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn geometric_series_window() {
        // 1/(1-z) = 1 + z + z^2 + ...
        let r = RationalC::new(PolyC::one(), PolyC::from_real(&[1.0, -1.0])).unwrap();
        let w = LaurentWindow::from_rational(&r, 6).unwrap();
        assert_eq!(w.lo(), 0);
        for k in 0..=6 {
            assert!((w.coeff(k) - c(1.0, 0.0)).norm() < 1e-14);
        }
    }

    #[test]
    fn pole_window() {
        // (z + 1)/z^2 = z^-2 + z^-1
        let r = RationalC::new(PolyC::from_real(&[1.0, 1.0]), PolyC::from_real(&[0.0, 0.0, 1.0]))
            .unwrap();
        let w = LaurentWindow::from_rational(&r, 3).unwrap();
        assert_eq!(w.lo(), -2);
        assert!((w.coeff(-2) - c(1.0, 0.0)).norm() < 1e-14);
        assert!((w.coeff(-1) - c(1.0, 0.0)).norm() < 1e-14);
        assert!(w.coeff(0).norm() < 1e-14);
    }

    #[test]
    fn product_window_range_is_conservative() {
        let a = LaurentWindow::new(0, vec![c(1.0, 0.0); 4]); // [0,3]
        let b = LaurentWindow::new(-2, vec![c(1.0, 0.0); 3]); // [-2,0]
        let p = a.mul(&b);
        assert_eq!(p.lo(), -2);
        assert_eq!(p.hi(), 0); // min(3 + (-2), 0 + 0)
        // Coefficient of z^0 in (1+z+z^2+z^3)(z^-2+z^-1+1): 1+1+1 = 3.
        assert!((p.coeff(0) - c(3.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn shift_and_pad() {
        let w = LaurentWindow::new(0, vec![c(2.0, 0.0)]);
        let s = w.shifted(-3);
        assert_eq!(s.lo(), -3);
        assert_eq!(s.hi(), -3);
        let p = s.pad_zeros_above(0);
        assert_eq!(p.hi(), 0);
        assert_eq!(p.coeff(-3), c(2.0, 0.0));
        assert_eq!(p.coeff(0), Complex64::ZERO);
    }
}
