//! Algebraic model of the de Rham group of holomorphic exponential forms in
//! the one-puncture configuration: every class of `Q e^P dz` reduces to a
//! combination of the monomial forms `z^k e^P dz`, `k = 0..d-2`, by peeling
//! exact forms `d(R e^P) = (R' + R P') e^P dz`.

use num_complex::Complex64;

use crate::algebra::PolyC;
use crate::error::{Error, Result};

/// Class of a form `Q e^P dz` in the monomial normal form: the coefficient
/// vector `(c_0, .., c_{d-2})` with `d = deg P`. Empty when `d = 1`.
#[derive(Clone, Debug, PartialEq)]
pub struct DeRhamClass {
    p: PolyC,
    coeffs: Vec<Complex64>,
}

impl DeRhamClass {
    pub fn p(&self) -> &PolyC {
        &self.p
    }

    pub fn coeffs(&self) -> &[Complex64] {
        &self.coeffs
    }

    pub fn norm(&self) -> f64 {
        self.coeffs.iter().map(|c| c.norm_sqr()).sum::<f64>().sqrt()
    }

    pub fn is_zero_within(&self, tol: f64) -> bool {
        self.coeffs.iter().all(|c| c.norm() <= tol)
    }
}

/// Witness for a reduction: the polynomial `R` with
/// `Q = sum_k c_k z^k + R' + R P'`, an identity of coefficients.
#[derive(Clone, Debug, PartialEq)]
pub struct ReductionCertificate {
    r: PolyC,
}

impl ReductionCertificate {
    pub fn r(&self) -> &PolyC {
        &self.r
    }

    /// Max coefficient magnitude of `Q - sum_k c_k z^k - R' - R P'`; machine
    /// noise relative to [`Self::identity_scale`] when the reduction is sound.
    pub fn residual(&self, q: &PolyC, p: &PolyC, class: &DeRhamClass) -> f64 {
        let mut recon = &self.r.derivative() + &(&self.r * &p.derivative());
        recon = &recon + &PolyC::new(class.coeffs.clone());
        (q - &recon).max_coeff_norm()
    }

    /// Largest coefficient magnitude appearing in the identity
    /// `Q = sum c_k z^k + R' + R P'`; the natural backward-error scale. The
    /// witness terms dominate `Q` itself when the leading coefficient of `P`
    /// is small.
    pub fn identity_scale(&self, q: &PolyC, p: &PolyC) -> f64 {
        q.max_coeff_norm()
            .max(self.r.derivative().max_coeff_norm())
            .max((&self.r * &p.derivative()).max_coeff_norm())
            .max(1.0)
    }
}

/// Reduce `Q e^P dz` to the monomial normal form.
///
/// Greedy elimination by degree: while `deg Q >= d - 1`, subtracting
/// `d(q_n / (d a_d) z^{n-d+1} e^P)` cancels the top term. The system is
/// triangular in the monomial basis with `a_d` as its only pivot, so no
/// pivoting is needed and termination is immediate.
pub fn reduce(q: &PolyC, p: &PolyC) -> Result<(DeRhamClass, ReductionCertificate)> {
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegreeTooSmall { got: p.degree().unwrap_or(0), min: 1 }),
    };
    let lead = p.coeff(d);
    let dp = p.derivative();

    let mut rem = q.clone();
    let mut r = PolyC::zero();
    while let Some(n) = rem.degree() {
        if n + 1 < d {
            break;
        }
        let t = rem.coeff(n) / (lead * d as f64);
        let step = PolyC::monomial(n + 1 - d, t);
        // rem -= step' + step * P'; the z^n terms cancel exactly.
        rem = &(&rem - &step.derivative()) - &(&step * &dp);
        // The top coefficient is zero by construction; enforce it so the
        // loop strictly descends even under rounding.
        let mut coeffs = rem.coeffs().to_vec();
        if coeffs.len() > n {
            coeffs[n] = Complex64::ZERO;
        }
        rem = PolyC::new(coeffs);
        r = &r + &step;
    }

    let mut coeffs = vec![Complex64::ZERO; d.saturating_sub(1)];
    for (k, slot) in coeffs.iter_mut().enumerate() {
        *slot = rem.coeff(k);
    }
    let class = DeRhamClass { p: p.clone(), coeffs };
    let cert = ReductionCertificate { r };
    debug_assert!(
        cert.residual(q, p, &class) <= 1e-9 * cert.identity_scale(q, p),
        "reduction identity violated"
    );
    Ok((class, cert))
}

/// Whether `Q e^P dz` is exact, i.e. reduces to the zero class. Classes are
/// compared at a relative threshold of 1e-12 against the input coefficient
/// scale. For `d = 1` the class space is empty and every form is exact.
pub fn is_exact(q: &PolyC, p: &PolyC) -> Result<bool> {
    let (class, _) = reduce(q, p)?;
    let scale = q.max_coeff_norm().max(1.0);
    Ok(class.is_zero_within(1e-12 * scale))
}

/// Dimension of the relative homology (equivalently of the reduced de Rham
/// group): `deg P - 1`.
pub fn h1_dimension(p: &PolyC) -> Result<usize> {
    match p.degree() {
        Some(d) if d >= 1 => Ok(d - 1),
        _ => Err(Error::DegreeTooSmall { got: p.degree().unwrap_or(0), min: 1 }),
    }
}
