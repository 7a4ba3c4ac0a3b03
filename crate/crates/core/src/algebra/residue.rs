//! Residues of rational 1-forms and of products against `e^h`.

use num_complex::Complex64;

use super::laurent::LaurentWindow;
use super::poly::PolyC;
use super::principal::{exp_principal_series, PrincipalPart};
use super::rational::{multiplicity_at, RationalC};
use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

/// Residue of the 1-form `w(z) dz` at a point of the sphere. Regular points
/// give zero; at infinity the residue is that of `-w(1/u)/u^2` at `u = 0`.
pub fn residue_meromorphic(w: &RationalC, at: SpherePoint) -> Complex64 {
    match at {
        SpherePoint::Finite(z0) => residue_at_finite(w, z0),
        SpherePoint::Infinity => residue_at_infinity(w),
    }
}

fn residue_at_finite(w: &RationalC, z0: Complex64) -> Complex64 {
    if w.is_zero() {
        return Complex64::ZERO;
    }
    let m_den = multiplicity_at(w.den(), z0);
    let m_num = multiplicity_at(w.num(), z0);
    let m = m_den as i64 - m_num as i64;
    if m <= 0 {
        return Complex64::ZERO;
    }
    let m = m as usize;

    // Strip the local factor: num = (z - z0)^{m_num} n1, den = (z - z0)^{m_den} d1;
    // then the residue is the Taylor coefficient of order m-1 of n1/d1 at z0.
    let lin = PolyC::new(vec![-z0, Complex64::ONE]);
    let mut n1 = w.num().clone();
    for _ in 0..m_num {
        n1 = n1.div_rem(&lin).0;
    }
    let mut d1 = w.den().clone();
    for _ in 0..m_den {
        d1 = d1.div_rem(&lin).0;
    }
    taylor_quotient_coeff(&n1, &d1, z0, m - 1)
}

fn residue_at_infinity(w: &RationalC) -> Complex64 {
    if w.is_zero() {
        return Complex64::ZERO;
    }
    // In u = 1/z: w(1/u) = u^delta num_rev(u)/den_rev(u) with delta the order
    // at infinity; -w(1/u)/u^2 is regular at 0 once delta >= 2.
    let delta = w.ord_at_infinity();
    if delta >= 2 {
        return Complex64::ZERO;
    }
    let order = (1 - delta) as usize;
    let c = taylor_quotient_coeff(&w.num().reversed(), &w.den().reversed(), Complex64::ZERO, order);
    -c
}

/// Taylor coefficient of order `k` of `a/b` about `z0`, with `b(z0) != 0`.
fn taylor_quotient_coeff(a: &PolyC, b: &PolyC, z0: Complex64, k: usize) -> Complex64 {
    let one = Complex64::ONE;
    let a0 = a.compose_affine(one, z0);
    let b0 = b.compose_affine(one, z0);
    let lead = b0.coeff(0);
    let mut q = vec![Complex64::ZERO; k + 1];
    for j in 0..=k {
        let mut s = a0.coeff(j);
        for (i, &qi) in q.iter().enumerate().take(j) {
            s -= qi * b0.coeff(j - i);
        }
        q[j] = s / lead;
    }
    q[k]
}

/// Truncated residue at the origin of `alpha(z) e^{h(z)} dz`:
/// `sum_{m = alpha.lo .. trunc} alpha_m * [e^h]_{-1-m}`, together with a
/// heuristic tail estimate (the absolute sum of the last block of terms,
/// block length = pole order of `h`). The true residue is the convergent
/// infinite series; the estimate is not a proven bound.
///
/// Errors when `alpha` does not supply coefficients up to `trunc`, or when
/// the trailing block magnitudes fail to decay.
pub fn residue_exp_product(
    alpha: &LaurentWindow,
    h: &PrincipalPart,
    trunc: i64,
) -> Result<(Complex64, f64)> {
    const DECAY_SPAN: usize = 4;
    if trunc < 1 {
        return Err(Error::WindowTooShort { hi: trunc, needed: 1 });
    }
    if alpha.hi() < trunc {
        return Err(Error::WindowTooShort { hi: alpha.hi(), needed: trunc });
    }
    let exp_lo = -1 - trunc;
    let e = exp_principal_series(h, exp_lo.min(-1))?;

    let mut terms = Vec::with_capacity((trunc - alpha.lo() + 1) as usize);
    let mut sum = Complex64::ZERO;
    for m in alpha.lo()..=trunc {
        let t = alpha.coeff(m) * e.coeff(-1 - m);
        sum += t;
        terms.push(t.norm());
    }

    // Blocks of pole-order length, scanned from the top end.
    let block = h.pole_order().max(1);
    let blocks: Vec<f64> = terms.chunks(block).map(|ch| ch.iter().sum()).collect();
    let tail_estimate = *blocks.last().unwrap_or(&0.0);

    if blocks.len() > DECAY_SPAN {
        let last = &blocks[blocks.len() - (DECAY_SPAN + 1)..];
        let non_decaying = last.windows(2).all(|w| w[1] >= w[0]);
        if non_decaying && tail_estimate > 0.0 {
            return Err(Error::NonConvergence { span: DECAY_SPAN });
        }
    }
    Ok((sum, tail_estimate))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn rat(num: &[f64], den: &[f64]) -> RationalC {
        RationalC::new(PolyC::from_real(num), PolyC::from_real(den)).unwrap()
    }

    #[test]
    fn defining_case_one_over_z() {
        let w = rat(&[1.0], &[0.0, 1.0]);
        assert!((residue_meromorphic(&w, SpherePoint::Finite(Complex64::ZERO)) - c(1.0, 0.0))
            .norm()
            < 1e-14);
    }

    #[test]
    fn log_derivative_counts_order() {
        // df/f for f = z e^{z^2} is 1/z + 2z = (2z^2 + 1)/z; residue at 0 is ord_0(f) = 1.
        let w = rat(&[1.0, 0.0, 2.0], &[0.0, 1.0]);
        assert!((residue_meromorphic(&w, SpherePoint::Finite(Complex64::ZERO)) - c(1.0, 0.0))
            .norm()
            < 1e-14);
    }

    #[test]
    fn residue_at_infinity_of_one_over_z() {
        let w = rat(&[1.0], &[0.0, 1.0]);
        assert!((residue_meromorphic(&w, SpherePoint::Infinity) - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn higher_order_pole() {
        // (z + 1)/z^2 = z^-2 + z^-1: residue 1 at 0, -1 at infinity.
        let w = rat(&[1.0, 1.0], &[0.0, 0.0, 1.0]);
        assert!((residue_meromorphic(&w, SpherePoint::Finite(Complex64::ZERO)) - c(1.0, 0.0))
            .norm()
            < 1e-14);
        assert!((residue_meromorphic(&w, SpherePoint::Infinity) - c(-1.0, 0.0)).norm() < 1e-14);
    }

    #[test]
    fn regular_point_gives_zero() {
        let w = rat(&[1.0], &[0.0, 1.0]);
        assert_eq!(residue_meromorphic(&w, SpherePoint::Finite(c(2.0, 0.0))), Complex64::ZERO);
    }

    #[test]
    fn residue_sum_over_sphere_vanishes() {
        // w = (3z^2 - 1)/((z-1)(z+2)(z-i)): three simple poles plus infinity.
        let den = &(&PolyC::new(vec![c(-1.0, 0.0), c(1.0, 0.0)])
            * &PolyC::new(vec![c(2.0, 0.0), c(1.0, 0.0)]))
            * &PolyC::new(vec![c(0.0, -1.0), c(1.0, 0.0)]);
        let w = RationalC::new(PolyC::from_real(&[-1.0, 0.0, 3.0]), den).unwrap();
        let mut total = residue_meromorphic(&w, SpherePoint::Infinity);
        for p in [c(1.0, 0.0), c(-2.0, 0.0), c(0.0, 1.0)] {
            total += residue_meromorphic(&w, SpherePoint::Finite(p));
        }
        assert!(total.norm() < 1e-12);
    }

    #[test]
    fn exp_product_geometric_series_gives_e_minus_one() {
        // alpha = 1/(1-z), h = 1/z: residue is sum 1/(m+1)! = e - 1.
        let alpha = LaurentWindow::from_rational(
            &rat(&[1.0], &[1.0, -1.0]),
            30,
        )
        .unwrap();
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let (v, tail) = residue_exp_product(&alpha, &h, 30).unwrap();
        assert!((v - c(std::f64::consts::E - 1.0, 0.0)).norm() < 1e-12);
        assert!(tail < 1e-30);
    }

    #[test]
    fn exp_product_constant_alpha() {
        let alpha = LaurentWindow::from_poly(&PolyC::one(), 10);
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let (v, _) = residue_exp_product(&alpha, &h, 10).unwrap();
        assert!((v - c(1.0, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_product_alpha_z() {
        let alpha = LaurentWindow::from_poly(&PolyC::monomial(1, c(1.0, 0.0)), 10);
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let (v, _) = residue_exp_product(&alpha, &h, 10).unwrap();
        assert!((v - c(0.5, 0.0)).norm() < 1e-15);
    }

    #[test]
    fn exp_product_doubling_trunc_stays_within_tail() {
        let r = rat(&[1.0], &[1.0, -1.0]);
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let a30 = LaurentWindow::from_rational(&r, 30).unwrap();
        let a15 = LaurentWindow::from_rational(&r, 15).unwrap();
        let (v30, _) = residue_exp_product(&a30, &h, 30).unwrap();
        let (v15, tail15) = residue_exp_product(&a15, &h, 15).unwrap();
        assert!((v30 - v15).norm() <= tail15);
    }

    #[test]
    fn non_decaying_blocks_flagged() {
        // Hand-built coefficients growing like (2m)! overwhelm 1/(m+1)!.
        let mut coeffs = Vec::new();
        let mut f = 1.0f64;
        for m in 0..24u32 {
            coeffs.push(c(f, 0.0));
            f *= (2 * m + 1) as f64 * (2 * m + 2) as f64;
        }
        let alpha = LaurentWindow::new(0, coeffs);
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            residue_exp_product(&alpha, &h, 23),
            Err(Error::NonConvergence { .. })
        ));
    }

    #[test]
    fn window_too_short_rejected() {
        let alpha = LaurentWindow::from_poly(&PolyC::one(), 5);
        let h = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        assert!(matches!(
            residue_exp_product(&alpha, &h, 10),
            Err(Error::WindowTooShort { .. })
        ));
    }
}
