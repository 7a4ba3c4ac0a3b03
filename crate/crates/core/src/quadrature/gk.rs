//! Gauss-Kronrod 7-15 panels for vector-valued complex integrands along
//! straight segments in the plane.

use num_complex::Complex64;

/// Kronrod abscissae on [0, 1] side (symmetric), largest first; index 7 is 0.
#[allow(clippy::excessive_precision)]
const XGK: [f64; 8] = [
    0.991_455_371_120_812_639_206_854_697_526_329,
    0.949_107_912_342_758_524_526_189_684_047_851,
    0.864_864_423_359_769_072_789_712_788_640_926,
    0.741_531_185_599_394_439_863_864_773_280_788,
    0.586_087_235_467_691_130_294_144_838_258_730,
    0.405_845_151_377_397_166_906_606_412_076_961,
    0.207_784_955_007_898_467_600_689_403_773_245,
    0.000_000_000_000_000_000_000_000_000_000_000,
];

/// 7-point Gauss weights (for XGK indices 1, 3, 5 and the center).
#[allow(clippy::excessive_precision)]
const WG: [f64; 4] = [
    0.129_484_966_168_869_693_270_611_432_679_082,
    0.279_705_391_489_276_667_901_467_771_423_780,
    0.381_830_050_505_118_944_950_369_775_488_975,
    0.417_959_183_673_469_387_755_102_040_816_327,
];

/// 15-point Kronrod weights matching XGK.
#[allow(clippy::excessive_precision)]
const WGK: [f64; 8] = [
    0.022_935_322_010_529_224_963_732_008_058_970,
    0.063_092_092_629_978_553_290_700_663_189_204,
    0.104_790_010_322_250_183_839_876_322_541_518,
    0.140_653_259_715_525_918_745_189_590_510_238,
    0.169_004_726_639_267_902_826_583_426_598_550,
    0.190_350_578_064_785_409_913_256_402_421_014,
    0.204_432_940_075_298_892_414_161_999_234_649,
    0.209_482_141_084_727_828_012_999_174_891_714,
];

pub(crate) const EVALS_PER_PANEL: usize = 15;

/// One evaluated panel over the segment `[a, b]`.
#[derive(Clone, Debug)]
pub(crate) struct Panel {
    pub a: Complex64,
    pub b: Complex64,
    /// Kronrod value per component.
    pub values: Vec<Complex64>,
    /// Scaled error estimate per component.
    pub errors: Vec<f64>,
    /// Integral of |f| per component (times arclength).
    pub resabs: Vec<f64>,
}

impl Panel {
    pub fn worst_error(&self) -> f64 {
        self.errors.iter().copied().fold(0.0, f64::max)
    }

    /// Rounding floor for this panel's error; bisecting below it only
    /// shuffles noise.
    pub fn at_rounding_floor(&self) -> bool {
        self.errors
            .iter()
            .zip(&self.resabs)
            .all(|(&e, &ra)| e <= 100.0 * f64::EPSILON * ra)
    }
}

/// QUADPACK-style error rescaling: sharpen the raw |K - G| difference using
/// the deviation integral, and floor at the attainable rounding level.
fn rescale_error(err: f64, resabs: f64, resasc: f64) -> f64 {
    let mut scaled = err.abs();
    if resasc != 0.0 && scaled != 0.0 {
        let scale = (200.0 * scaled / resasc).powf(1.5);
        scaled = if scale < 1.0 { resasc * scale } else { resasc };
    }
    if resabs > f64::MIN_POSITIVE / (50.0 * f64::EPSILON) {
        scaled = scaled.max(50.0 * f64::EPSILON * resabs);
    }
    scaled
}

/// Evaluate one Gauss-Kronrod 7-15 panel of `f` (writing `ncomp` component
/// values per point) over the straight segment from `a` to `b`.
///
/// Returns `Err(z)` with the offending point if the integrand is non-finite.
pub(crate) fn gk15<F>(f: &F, a: Complex64, b: Complex64, ncomp: usize) -> Result<Panel, Complex64>
where
    F: Fn(Complex64, &mut [Complex64]),
{
    let center = 0.5 * (a + b);
    let half = 0.5 * (b - a);
    let half_norm = half.norm();

    let mut fval = vec![Complex64::ZERO; ncomp];
    let mut evals: Vec<Vec<Complex64>> = Vec::with_capacity(EVALS_PER_PANEL);
    let mut points = Vec::with_capacity(EVALS_PER_PANEL);
    // Node order: pairs (-x, +x) for XGK[0..7], then the center.
    for &x in XGK[..7].iter() {
        points.push(center - half * x);
        points.push(center + half * x);
    }
    points.push(center);
    for &z in &points {
        f(z, &mut fval);
        if fval.iter().any(|v| !v.is_finite()) {
            return Err(z);
        }
        evals.push(fval.clone());
    }

    let mut values = vec![Complex64::ZERO; ncomp];
    let mut errors = vec![0.0; ncomp];
    let mut resabs = vec![0.0; ncomp];

    for comp in 0..ncomp {
        let center_val = evals[14][comp];
        let mut kronrod = center_val * WGK[7];
        let mut gauss = center_val * WG[3];
        let mut rabs = center_val.norm() * WGK[7];
        for j in 0..7 {
            let lo = evals[2 * j][comp];
            let hi = evals[2 * j + 1][comp];
            kronrod += WGK[j] * (lo + hi);
            rabs += WGK[j] * (lo.norm() + hi.norm());
            if j % 2 == 1 {
                // XGK indices 1, 3, 5 are the Gauss nodes.
                gauss += WG[j / 2] * (lo + hi);
            }
        }
        let mean = kronrod * 0.5;
        let mut rasc = WGK[7] * (center_val - mean).norm();
        for j in 0..7 {
            rasc += WGK[j]
                * ((evals[2 * j][comp] - mean).norm() + (evals[2 * j + 1][comp] - mean).norm());
        }
        values[comp] = kronrod * half;
        resabs[comp] = rabs * half_norm;
        let raw = (kronrod - gauss).norm() * half_norm;
        errors[comp] = rescale_error(raw, resabs[comp], rasc * half_norm);
    }

    Ok(Panel { a, b, values, errors, resabs })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn integrates_polynomial_exactly() {
        // x^5 over [0, 2] = 64/6; degree 5 is inside the Gauss-7 exactness.
        let f = |z: Complex64, out: &mut [Complex64]| out[0] = z.powu(5);
        let p = gk15(&f, Complex64::ZERO, Complex64::new(2.0, 0.0), 1).unwrap();
        assert!((p.values[0] - Complex64::new(64.0 / 6.0, 0.0)).norm() < 1e-12);
        assert!(p.errors[0] < 1e-10);
    }

    #[test]
    fn complex_segment_direction() {
        // Integral of 1 along a segment is the segment vector itself.
        let f = |_z: Complex64, out: &mut [Complex64]| out[0] = Complex64::ONE;
        let a = Complex64::new(1.0, -1.0);
        let b = Complex64::new(-0.5, 2.0);
        let p = gk15(&f, a, b, 1).unwrap();
        assert!((p.values[0] - (b - a)).norm() < 1e-14);
    }

    #[test]
    fn error_estimate_sees_roughness() {
        let f = |z: Complex64, out: &mut [Complex64]| out[0] = Complex64::new((20.0 * z.re).sin(), 0.0);
        let p = gk15(&f, Complex64::ZERO, Complex64::new(3.0, 0.0), 1).unwrap();
        assert!(p.errors[0] > 1e-8);
    }

    #[test]
    fn non_finite_integrand_reports_point() {
        let f = |z: Complex64, out: &mut [Complex64]| out[0] = Complex64::new(1.0 / (z.re - 1.0), 0.0);
        // The segment passes through the singularity footprint.
        let r = gk15(&f, Complex64::ZERO, Complex64::new(2.0, 0.0), 1);
        // Nodes rarely hit exactly 1.0, so this may succeed; force a NaN instead.
        let g = |_z: Complex64, out: &mut [Complex64]| out[0] = Complex64::new(f64::NAN, 0.0);
        assert!(gk15(&g, Complex64::ZERO, Complex64::new(2.0, 0.0), 1).is_err());
        let _ = r;
    }
}
