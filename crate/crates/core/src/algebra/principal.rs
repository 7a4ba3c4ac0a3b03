//! Pole-only germs and the coefficient series of `e^h`.

use num_complex::Complex64;

use super::laurent::LaurentWindow;
use super::poly::PolyC;
use crate::error::{Error, Result};

/// Principal part of a meromorphic germ: `h = sum_{j=1..d} c_j z^{-j}` with
/// `c_d != 0`. This is the canonical representative (zero holomorphic part)
/// of the class of `h` modulo holomorphic germs, so class equality is a
/// coefficient comparison.
#[derive(Clone, Debug, PartialEq)]
pub struct PrincipalPart {
    /// `neg[j - 1]` is the coefficient of `z^{-j}`.
    neg: Vec<Complex64>,
}

impl PrincipalPart {
    pub fn new(mut neg_coeffs: Vec<Complex64>) -> Result<Self> {
        while neg_coeffs.last().is_some_and(|c| c.re == 0.0 && c.im == 0.0) {
            neg_coeffs.pop();
        }
        if neg_coeffs.is_empty() {
            return Err(Error::EmptyPrincipalPart);
        }
        Ok(PrincipalPart { neg: neg_coeffs })
    }

    /// The germ of `P` at infinity in the local coordinate `w = 1/z`:
    /// coefficient of `w^{-j}` is the coefficient of `z^j`, the constant term
    /// being holomorphic and hence dropped.
    pub fn from_poly_at_infinity(p: &PolyC) -> Result<Self> {
        let d = p.degree().ok_or(Error::ZeroInput("singularity type"))?;
        if d == 0 {
            return Err(Error::EmptyPrincipalPart);
        }
        PrincipalPart::new(p.coeffs()[1..=d].to_vec())
    }

    /// Pole order `d`.
    pub fn pole_order(&self) -> usize {
        self.neg.len()
    }

    /// Coefficient of `z^{-j}`, `j >= 1`.
    pub fn coeff_neg(&self, j: usize) -> Complex64 {
        if j >= 1 && j <= self.neg.len() {
            self.neg[j - 1]
        } else {
            Complex64::ZERO
        }
    }

    pub fn coeffs_neg(&self) -> &[Complex64] {
        &self.neg
    }

    /// Leading coefficient `c_d`.
    pub fn leading(&self) -> Complex64 {
        *self.neg.last().unwrap()
    }

    pub fn eval(&self, w: Complex64) -> Complex64 {
        let inv = 1.0 / w;
        let mut acc = Complex64::ZERO;
        for &c in self.neg.iter().rev() {
            acc = (acc + c) * inv;
        }
        acc
    }

    pub fn add(&self, other: &PrincipalPart) -> Result<Self> {
        let n = self.neg.len().max(other.neg.len());
        let coeffs = (1..=n).map(|j| self.coeff_neg(j) + other.coeff_neg(j)).collect();
        PrincipalPart::new(coeffs)
    }
}

/// Coefficients of `e^h` for the powers `lo..0`.
///
/// Each coefficient of `z^{-n}` is the finite sum over `k` of the `z^{-n}`
/// coefficient of `h^k / k!`; only `k <= n` contribute because `h` has purely
/// negative powers, so the window is exact and `tail_bound` is zero. All
/// positive-power coefficients of `e^h` vanish, which is why `lo > 0` is
/// rejected rather than answered.
pub fn exp_principal_series(h: &PrincipalPart, lo: i64) -> Result<LaurentWindow> {
    if lo > 0 {
        return Err(Error::PositiveWindowStart(lo));
    }
    let depth = (-lo) as usize;
    let mut acc = vec![Complex64::ZERO; depth + 1]; // acc[i] = coeff of z^{lo + i}
    acc[depth] = Complex64::ONE; // k = 0 term
    if depth == 0 {
        return Ok(LaurentWindow::new(0, acc));
    }

    // term_k = h^k / k!, truncated below lo; dropped coefficients only feed
    // powers strictly below lo in later products.
    let h_window: Vec<Complex64> = (lo..=-1).map(|k| h.coeff_neg((-k) as usize)).collect();
    let mut term = vec![Complex64::ZERO; depth + 1];
    term[depth] = Complex64::ONE;
    for k in 1..=depth {
        let mut next = vec![Complex64::ZERO; depth + 1];
        for (i, &a) in term.iter().enumerate() {
            if a == Complex64::ZERO {
                continue;
            }
            // power(term[i]) = lo + i; power(h[j]) = lo + j - so the product
            // lands at offset i + j - depth when that is still in range.
            for (j, &b) in h_window.iter().enumerate() {
                if b == Complex64::ZERO {
                    continue;
                }
                let off = i as i64 + j as i64 - depth as i64;
                if off >= 0 {
                    next[off as usize] += a * b;
                }
            }
        }
        let inv_k = 1.0 / k as f64;
        for (t, n) in term.iter_mut().zip(next.iter()) {
            *t = n * inv_k;
        }
        for (a, t) in acc.iter_mut().zip(term.iter()) {
            *a += t;
        }
    }
    Ok(LaurentWindow::new(lo, acc))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    #[test]
    fn exp_of_simple_pole() {
        // e^{1/z}: coefficient of z^{-n} is 1/n!
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let w = exp_principal_series(&h, -3).unwrap();
        assert!((w.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((w.coeff(-1) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((w.coeff(-2) - c(0.5, 0.0)).norm() < 1e-15);
        assert!((w.coeff(-3) - c(1.0 / 6.0, 0.0)).norm() < 1e-15);
        assert_eq!(w.tail_bound(), 0.0);
    }

    #[test]
    fn exp_of_scaled_pole() {
        // e^{2/z}: (2/z)^k / k! gives 1, 2, 2 down to z^{-2}
        let h = PrincipalPart::new(vec![c(2.0, 0.0)]).unwrap();
        let w = exp_principal_series(&h, -2).unwrap();
        assert!((w.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!((w.coeff(-1) - c(2.0, 0.0)).norm() < 1e-15);
        assert!((w.coeff(-2) - c(2.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_of_order_two_pole() {
        // e^{1/z^2}: only k = 0, 1 reach powers >= -2
        let h = PrincipalPart::new(vec![c(0.0, 0.0), c(1.0, 0.0)]).unwrap();
        let w = exp_principal_series(&h, -2).unwrap();
        assert!((w.coeff(0) - c(1.0, 0.0)).norm() < 1e-15);
        assert!(w.coeff(-1).norm() < 1e-15);
        assert!((w.coeff(-2) - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn positive_window_start_rejected() {
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            exp_principal_series(&h, 1),
            Err(Error::PositiveWindowStart(1))
        ));
    }

    #[test]
    fn all_zero_principal_part_rejected() {
        assert!(PrincipalPart::new(vec![c(0.0, 0.0), c(0.0, 0.0)]).is_err());
        assert!(PrincipalPart::new(vec![]).is_err());
    }

    #[test]
    fn trailing_zero_coefficients_trimmed() {
        let h = PrincipalPart::new(vec![c(1.0, 0.0), c(0.0, 0.0)]).unwrap();
        assert_eq!(h.pole_order(), 1);
        assert_eq!(h.leading(), c(1.0, 0.0));
    }
}
