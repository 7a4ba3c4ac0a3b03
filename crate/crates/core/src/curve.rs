//! Genus-zero curve data with exponential singularity types, the
//! descent-direction combinatorics of its ramification points, and divisor
//! calculus on the sphere.

use num_complex::Complex64;
use serde::{Deserialize, Serialize};
use std::f64::consts::PI;

use crate::algebra::{roots, PolyC, PrincipalPart, RationalC};
use crate::error::{Error, Result};
use crate::sphere::SpherePoint;

/// One puncture: its location on the sphere and the principal part of its
/// singularity type in the local coordinate centered there (`w = z - p` at a
/// finite point, `w = 1/z` at infinity).
#[derive(Clone, Debug)]
pub struct Puncture {
    pub location: SpherePoint,
    pub part: PrincipalPart,
}

/// Genus-zero curve datum: punctures with pole-only germs. The completion of
/// the punctured sphere acquires `d_i` ramification points per puncture,
/// `sum d_i` in total, one per descent direction of `Re h_i`.
#[derive(Clone, Debug)]
pub struct ExpCurveGZ {
    punctures: Vec<Puncture>,
}

impl ExpCurveGZ {
    pub fn new(punctures: Vec<Puncture>) -> Result<Self> {
        if punctures.is_empty() {
            return Err(Error::InvalidCurve("at least one puncture is required".into()));
        }
        for i in 0..punctures.len() {
            for j in (i + 1)..punctures.len() {
                let same = match (&punctures[i].location, &punctures[j].location) {
                    (SpherePoint::Infinity, SpherePoint::Infinity) => true,
                    (SpherePoint::Finite(a), SpherePoint::Finite(b)) => a == b,
                    _ => false,
                };
                if same {
                    return Err(Error::InvalidCurve(format!(
                        "punctures {i} and {j} share the location {}",
                        punctures[i].location
                    )));
                }
            }
        }
        Ok(ExpCurveGZ { punctures })
    }

    /// The flagship configuration: a single puncture at infinity of type `P`.
    pub fn one_puncture_at_infinity(p: &PolyC) -> Result<Self> {
        let part = PrincipalPart::from_poly_at_infinity(p)?;
        ExpCurveGZ::new(vec![Puncture { location: SpherePoint::Infinity, part }])
    }

    pub fn punctures(&self) -> &[Puncture] {
        &self.punctures
    }

    /// Total ramification-point count `sum_i d_i`.
    pub fn d_total(&self) -> usize {
        self.punctures.iter().map(|p| p.part.pole_order()).sum()
    }
}

/// One infinite-order ramification point, indexed by its puncture and its
/// descent sector. `central_angle` is the descent-ray direction: for a
/// finite puncture the direction of approach in `w = z - p`, for the
/// puncture at infinity the direction in the z-plane along which `z` leaves
/// to infinity. Sector indices count ascending angles in `[0, 2pi)`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct RamPoint {
    pub puncture_index: usize,
    pub sector_index: usize,
    pub central_angle: f64,
}

fn normalize_angle(a: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut a = a % two_pi;
    if a < 0.0 {
        a += two_pi;
    }
    // Snap the wrap-around boundary so sorting is stable.
    if (a - two_pi).abs() < 1e-12 {
        a = 0.0;
    }
    a
}

/// The ramification points of the curve, grouped by puncture, each carrying
/// the central angle of its descent ray.
///
/// For a puncture with pole order `d` and leading local coefficient `c_d`
/// the rays solve `cos(arg c_d - d theta) = -1` in the local coordinate;
/// at infinity, where `h(z) = c_d z^d + ...` in the z-plane, they solve
/// `cos(arg c_d + d theta) = -1`, i.e. `theta_m = (pi - arg c_d + 2 pi m)/d`.
/// Along every returned ray `Re h` descends to `-infinity`.
pub fn ramification_points(curve: &ExpCurveGZ) -> Vec<RamPoint> {
    let mut out = Vec::with_capacity(curve.d_total());
    for (pi_idx, p) in curve.punctures.iter().enumerate() {
        let d = p.part.pole_order();
        let arg = p.part.leading().arg();
        let mut angles: Vec<f64> = (0..d)
            .map(|m| {
                let raw = match p.location {
                    SpherePoint::Infinity => (PI - arg + 2.0 * PI * m as f64) / d as f64,
                    SpherePoint::Finite(_) => (arg - PI + 2.0 * PI * m as f64) / d as f64,
                };
                normalize_angle(raw)
            })
            .collect();
        angles.sort_by(|a, b| a.partial_cmp(b).unwrap());
        for (m, angle) in angles.into_iter().enumerate() {
            out.push(RamPoint { puncture_index: pi_idx, sector_index: m, central_angle: angle });
        }
    }
    out
}

/// A divisor on the sphere: finitely many points with nonzero integer
/// multiplicities.
#[derive(Clone, Debug, Default)]
pub struct Divisor {
    support: Vec<(SpherePoint, i64)>,
}

impl Divisor {
    pub fn empty() -> Self {
        Divisor { support: Vec::new() }
    }

    /// Build from raw entries, merging coincident points and dropping zero
    /// multiplicities.
    pub fn from_entries(entries: impl IntoIterator<Item = (SpherePoint, i64)>) -> Self {
        let mut support: Vec<(SpherePoint, i64)> = Vec::new();
        for (pt, m) in entries {
            if m == 0 {
                continue;
            }
            match support.iter_mut().find(|(q, _)| q.close_to(&pt, 1e-8)) {
                Some((_, mm)) => *mm += m,
                None => support.push((pt, m)),
            }
        }
        support.retain(|&(_, m)| m != 0);
        Divisor { support }
    }

    pub fn support(&self) -> &[(SpherePoint, i64)] {
        &self.support
    }

    pub fn multiplicity_near(&self, pt: &SpherePoint, tol: f64) -> i64 {
        self.support
            .iter()
            .find(|(q, _)| q.close_to(pt, tol))
            .map_or(0, |&(_, m)| m)
    }

    pub fn degree(&self) -> i64 {
        self.support.iter().map(|&(_, m)| m).sum()
    }

    pub fn add(&self, other: &Divisor) -> Divisor {
        Divisor::from_entries(self.support.iter().chain(other.support.iter()).copied())
    }
}

/// Divisor of `f = g * prod_i e^{h_i}` for rational `g`: the zeros and poles
/// of `g` on the sphere, the exponential factors contributing nothing to any
/// local order. Multiplicities at the punctures are those of `g` there.
pub fn divisor_of(g: &RationalC, _curve: &ExpCurveGZ) -> Result<Divisor> {
    if g.is_zero() {
        return Err(Error::ZeroInput("divisor argument"));
    }
    let mut entries: Vec<(SpherePoint, i64)> = Vec::new();
    for (z, m) in roots::roots_with_multiplicity(g.num()) {
        entries.push((SpherePoint::Finite(z), m as i64));
    }
    for (z, m) in roots::roots_with_multiplicity(g.den()) {
        entries.push((SpherePoint::Finite(z), -(m as i64)));
    }
    let at_inf = g.ord_at_infinity();
    if at_inf != 0 {
        entries.push((SpherePoint::Infinity, at_inf));
    }
    Ok(Divisor::from_entries(entries))
}

/// The standing degree-zero assertion for divisors of exponential functions.
pub fn degree_check(dv: &Divisor) -> bool {
    dv.degree() == 0
}

// --- curve-spec JSON -------------------------------------------------------

/// On-disk description of a curve:
/// `{"genus": 0, "punctures": [{"location": "inf" | [re, im],
///   "principal_part": [[re, im], ...]}]}`
/// where `principal_part` lists the coefficients `c_1..c_d` of
/// `z^{-1}..z^{-d}` in the local coordinate.
#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct CurveSpec {
    pub genus: u32,
    pub punctures: Vec<PunctureSpec>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
pub struct PunctureSpec {
    pub location: LocationSpec,
    pub principal_part: Vec<[f64; 2]>,
}

#[derive(Clone, Debug, Serialize, Deserialize, PartialEq)]
#[serde(untagged)]
pub enum LocationSpec {
    Named(String),
    Point([f64; 2]),
}

impl CurveSpec {
    pub fn from_curve(curve: &ExpCurveGZ) -> Self {
        CurveSpec {
            genus: 0,
            punctures: curve
                .punctures()
                .iter()
                .map(|p| PunctureSpec {
                    location: match p.location {
                        SpherePoint::Infinity => LocationSpec::Named("inf".into()),
                        SpherePoint::Finite(z) => LocationSpec::Point([z.re, z.im]),
                    },
                    principal_part: p.part.coeffs_neg().iter().map(|c| [c.re, c.im]).collect(),
                })
                .collect(),
        }
    }

    pub fn to_curve(&self) -> Result<ExpCurveGZ> {
        if self.genus != 0 {
            return Err(Error::InvalidCurve(format!(
                "only genus 0 is supported, got {}",
                self.genus
            )));
        }
        let punctures = self
            .punctures
            .iter()
            .map(|p| {
                let location = match &p.location {
                    LocationSpec::Named(s) if s == "inf" => SpherePoint::Infinity,
                    LocationSpec::Named(s) => {
                        return Err(Error::InvalidCurve(format!("unknown location '{s}'")))
                    }
                    LocationSpec::Point([re, im]) => SpherePoint::Finite(Complex64::new(*re, *im)),
                };
                let part = PrincipalPart::new(
                    p.principal_part.iter().map(|&[re, im]| Complex64::new(re, im)).collect(),
                )?;
                Ok(Puncture { location, part })
            })
            .collect::<Result<Vec<_>>>()?;
        ExpCurveGZ::new(punctures)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn c(re: f64, im: f64) -> Complex64 {
        Complex64::new(re, im)
    }

    fn angles_for(p: &PolyC) -> Vec<f64> {
        let curve = ExpCurveGZ::one_puncture_at_infinity(p).unwrap();
        ramification_points(&curve).iter().map(|r| r.central_angle).collect()
    }

    #[test]
    fn square_gives_two_vertical_rays() {
        let a = angles_for(&PolyC::from_real(&[0.0, 0.0, 1.0]));
        assert_eq!(a.len(), 2);
        assert!((a[0] - PI / 2.0).abs() < 1e-12);
        assert!((a[1] - 3.0 * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn linear_gives_single_ray_at_pi() {
        let a = angles_for(&PolyC::from_real(&[0.0, 1.0]));
        assert_eq!(a.len(), 1);
        assert!((a[0] - PI).abs() < 1e-12);
    }

    #[test]
    fn cubic_with_imaginary_leading_coefficient() {
        // i z^3: descent rays at pi/6, 5pi/6, 3pi/2.
        let p = PolyC::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(0.0, 0.0), c(0.0, 1.0)]);
        let a = angles_for(&p);
        assert_eq!(a.len(), 3);
        assert!((a[0] - PI / 6.0).abs() < 1e-12);
        assert!((a[1] - 5.0 * PI / 6.0).abs() < 1e-12);
        assert!((a[2] - 3.0 * PI / 2.0).abs() < 1e-12);
    }

    #[test]
    fn descent_along_every_central_ray() {
        // Sampled invariant: Re h decreases to -infinity along each ray.
        for p in [
            PolyC::from_real(&[0.0, 0.0, 1.0]),
            PolyC::new(vec![c(0.0, 0.0), c(1.0, -0.5), c(0.3, 0.2), c(0.0, 1.0)]),
            PolyC::from_real(&[1.0, 0.0, -2.0, 0.0, 1.0]),
        ] {
            let curve = ExpCurveGZ::one_puncture_at_infinity(&p).unwrap();
            for ram in ramification_points(&curve) {
                let dir = c(ram.central_angle.cos(), ram.central_angle.sin());
                let t0 = 8.0 * (1.0 + p.eval_abs(1.0));
                let mut prev = f64::INFINITY;
                for step in 0..6 {
                    let r = t0 * 1.5f64.powi(step);
                    let re = p.eval(r * dir).re;
                    assert!(re < prev, "Re P not decreasing along ray for {p}");
                    prev = re;
                }
                assert!(prev < -1e3);
            }
        }
    }

    #[test]
    fn descent_at_finite_puncture() {
        // h = i/w at the origin: descent ray where Re(i/w) -> -infinity.
        let part = PrincipalPart::new(vec![c(0.0, 1.0)]).unwrap();
        let curve =
            ExpCurveGZ::new(vec![Puncture { location: SpherePoint::Finite(Complex64::ZERO), part }])
                .unwrap();
        let rams = ramification_points(&curve);
        assert_eq!(rams.len(), 1);
        let dir = c(rams[0].central_angle.cos(), rams[0].central_angle.sin());
        let h = &curve.punctures()[0].part;
        let mut prev = f64::INFINITY;
        for step in 1..8 {
            let w = dir * 0.5f64.powi(step);
            let re = h.eval(w).re;
            assert!(re < prev);
            prev = re;
        }
        assert!(prev < -1e2);
    }

    #[test]
    fn ramification_count_matches_total_pole_order() {
        let curve = ExpCurveGZ::new(vec![
            Puncture {
                location: SpherePoint::Finite(c(1.0, 0.0)),
                part: PrincipalPart::new(vec![c(1.0, 0.0), c(0.5, 0.5)]).unwrap(),
            },
            Puncture {
                location: SpherePoint::Infinity,
                part: PrincipalPart::new(vec![c(0.0, 0.0), c(0.0, 0.0), c(2.0, 0.0)]).unwrap(),
            },
        ])
        .unwrap();
        assert_eq!(curve.d_total(), 5);
        assert_eq!(ramification_points(&curve).len(), 5);
    }

    #[test]
    fn duplicate_punctures_rejected() {
        let part = PrincipalPart::new(vec![c(1.0, 0.0)]).unwrap();
        let r = ExpCurveGZ::new(vec![
            Puncture { location: SpherePoint::Infinity, part: part.clone() },
            Puncture { location: SpherePoint::Infinity, part },
        ]);
        assert!(r.is_err());
    }

    #[test]
    fn divisor_of_unit_germ_is_empty() {
        let curve = ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 0.0, 1.0]))
            .unwrap();
        let g = RationalC::from_poly(PolyC::one());
        let dv = divisor_of(&g, &curve).unwrap();
        assert!(dv.support().is_empty());
        assert!(degree_check(&dv));
    }

    #[test]
    fn divisor_of_z_times_gaussian() {
        let curve = ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 0.0, 1.0]))
            .unwrap();
        let g = RationalC::from_poly(PolyC::from_real(&[0.0, 1.0]));
        let dv = divisor_of(&g, &curve).unwrap();
        assert_eq!(dv.multiplicity_near(&SpherePoint::Finite(Complex64::ZERO), 1e-8), 1);
        assert_eq!(dv.multiplicity_near(&SpherePoint::Infinity, 1e-8), -1);
        assert_eq!(dv.degree(), 0);
    }

    #[test]
    fn divisor_with_four_points() {
        let curve = ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 0.0, 1.0]))
            .unwrap();
        let g = RationalC::new(PolyC::from_real(&[1.0, 0.0, 1.0]), PolyC::from_real(&[0.0, 1.0]))
            .unwrap();
        let dv = divisor_of(&g, &curve).unwrap();
        assert_eq!(dv.multiplicity_near(&SpherePoint::Finite(c(0.0, 1.0)), 1e-6), 1);
        assert_eq!(dv.multiplicity_near(&SpherePoint::Finite(c(0.0, -1.0)), 1e-6), 1);
        assert_eq!(dv.multiplicity_near(&SpherePoint::Finite(Complex64::ZERO), 1e-6), -1);
        assert_eq!(dv.multiplicity_near(&SpherePoint::Infinity, 1e-6), -1);
        assert_eq!(dv.degree(), 0);
    }

    #[test]
    fn hand_built_divisor_fails_degree_check() {
        let dv = Divisor::from_entries([(SpherePoint::Finite(Complex64::ZERO), 1)]);
        assert!(!degree_check(&dv));
    }

    #[test]
    fn zero_g_rejected() {
        let curve = ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 1.0])).unwrap();
        let g = RationalC::new(PolyC::zero(), PolyC::one()).unwrap();
        assert!(divisor_of(&g, &curve).is_err());
    }

    #[test]
    fn curve_spec_round_trips() {
        let curve = ExpCurveGZ::new(vec![
            Puncture {
                location: SpherePoint::Finite(c(0.5, -1.25)),
                part: PrincipalPart::new(vec![c(1.0, 2.0)]).unwrap(),
            },
            Puncture {
                location: SpherePoint::Infinity,
                part: PrincipalPart::new(vec![c(0.0, 1.0), c(3.0, 0.0)]).unwrap(),
            },
        ])
        .unwrap();
        let spec = CurveSpec::from_curve(&curve);
        let text = serde_json::to_string_pretty(&spec).unwrap();
        let parsed: CurveSpec = serde_json::from_str(&text).unwrap();
        assert_eq!(parsed, spec);
        let back = parsed.to_curve().unwrap();
        assert_eq!(back.d_total(), curve.d_total());
    }

    #[test]
    fn genus_one_spec_rejected() {
        let spec: CurveSpec = serde_json::from_str(
            r#"{"genus": 1, "punctures": [{"location": "inf", "principal_part": [[1.0, 0.0]]}]}"#,
        )
        .unwrap();
        assert!(spec.to_curve().is_err());
    }
}

#[cfg(test)]
mod prop_tests {
    use super::*;
    use proptest::prelude::*;

    fn small_complex() -> impl Strategy<Value = Complex64> {
        (-2.0f64..2.0, -2.0f64..2.0).prop_map(|(re, im)| Complex64::new(re, im))
    }

    fn rational(max_deg: usize) -> impl Strategy<Value = RationalC> {
        (
            proptest::collection::vec(small_complex(), 1..=max_deg + 1),
            proptest::collection::vec(small_complex(), 1..=max_deg + 1),
        )
            .prop_filter_map("nonzero num and den", |(n, d)| {
                let num = PolyC::new(n);
                let den = PolyC::new(d);
                if num.is_zero() || den.is_zero() {
                    return None;
                }
                RationalC::new(num, den).ok()
            })
    }

    proptest! {
        #![proptest_config(ProptestConfig::with_cases(64))]

        // Degree-zero on the sphere for every rational divisor argument.
        #[test]
        fn divisor_degree_is_zero(g in rational(8)) {
            let curve =
                ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 0.0, 1.0])).unwrap();
            let dv = divisor_of(&g, &curve).unwrap();
            prop_assert!(degree_check(&dv));
        }

        // Divisor of a product is the sum of divisors.
        #[test]
        fn divisor_of_product_adds(g1 in rational(4), g2 in rational(4)) {
            let curve =
                ExpCurveGZ::one_puncture_at_infinity(&PolyC::from_real(&[0.0, 0.0, 1.0])).unwrap();
            let prod = g1.mul(&g2);
            prop_assume!(!prod.is_zero());
            let lhs = divisor_of(&prod, &curve).unwrap();
            let rhs = divisor_of(&g1, &curve).unwrap().add(&divisor_of(&g2, &curve).unwrap());
            prop_assert_eq!(lhs.degree(), rhs.degree());
            // Support comparison with a loose merge tolerance: root clusters
            // computed from the product can wobble.
            for (pt, m) in rhs.support() {
                prop_assert_eq!(lhs.multiplicity_near(pt, 1e-3), *m);
            }
        }
    }
}
