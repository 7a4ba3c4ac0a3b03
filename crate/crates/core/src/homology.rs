//! Contour representatives of relative homology classes joining the
//! ramification points of the one-puncture configuration.
//!
//! A cycle comes in from infinity along the central ray of its source point,
//! crosses to the target ray through a polyline connector, and leaves to
//! infinity along the target's central ray. For entire integrands any two
//! connectors with the same endpoints are homologous; the connector here runs
//! through the origin, which keeps `|e^P|` bounded by its values near the
//! origin instead of by its exponentially large maxima on a circle of
//! connector radius.

use num_complex::Complex64;
use serde::ser::SerializeSeq;
use serde::{Serialize, Serializer};

use crate::algebra::PolyC;
use crate::curve::{ramification_points, ExpCurveGZ, RamPoint};
use crate::error::{Error, Result};

/// Half-infinite ray `t e^{i angle}` for `t >= start_radius`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct Ray {
    pub angle: f64,
    pub start_radius: f64,
}

impl Ray {
    pub fn inner_endpoint(&self) -> Complex64 {
        Complex64::from_polar(self.start_radius, self.angle)
    }
}

/// A relative cycle: a contour from one ramification point to another.
/// The inbound ray carries the source's central angle, the outbound ray the
/// target's, and the connector polyline joins their inner endpoints.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RelativeCycle {
    pub source: RamPoint,
    pub target: RamPoint,
    pub inbound_ray: Ray,
    pub outbound_ray: Ray,
    #[serde(serialize_with = "serialize_points")]
    pub connector: Vec<Complex64>,
    pub orientation: i8,
}

fn serialize_points<S: Serializer>(pts: &[Complex64], s: S) -> std::result::Result<S::Ok, S::Error> {
    let mut seq = s.serialize_seq(Some(pts.len()))?;
    for p in pts {
        seq.serialize_element(&[p.re, p.im])?;
    }
    seq.end()
}

impl RelativeCycle {
    /// Orientation reversal: swap endpoints, reverse the connector, flip the
    /// sign. Periods over the reversed cycle are the negations.
    pub fn reverse(&self) -> RelativeCycle {
        let mut connector = self.connector.clone();
        connector.reverse();
        RelativeCycle {
            source: self.target,
            target: self.source,
            inbound_ray: self.outbound_ray,
            outbound_ray: self.inbound_ray,
            connector,
            orientation: -self.orientation,
        }
    }
}

/// The standard basis cycles of the one-puncture configuration, all sharing
/// one base ramification point.
#[derive(Clone, Debug, Serialize)]
pub struct CycleBasis {
    cycles: Vec<RelativeCycle>,
    base_radius: f64,
}

impl CycleBasis {
    pub fn cycles(&self) -> &[RelativeCycle] {
        &self.cycles
    }

    pub fn len(&self) -> usize {
        self.cycles.len()
    }

    pub fn is_empty(&self) -> bool {
        self.cycles.is_empty()
    }

    pub fn base_radius(&self) -> f64 {
        self.base_radius
    }
}

/// Default connector radius for the cycles of `P`: past it `|e^P|` is
/// monotone along the central rays, comfortably so for desk-scale degrees.
pub fn default_base_radius(p: &PolyC) -> f64 {
    let d = p.degree().unwrap_or(0);
    if d == 0 {
        return 4.0;
    }
    let lead = p.coeff(d).norm();
    let rest: f64 = p.coeffs()[..d].iter().map(|c| c.norm()).sum();
    2.0 + 2.0 * (rest / lead).max(1.0)
}

/// Basis cycles `gamma_1 .. gamma_{d-1}` for `P` of degree `d`: every cycle
/// starts at the base ramification point (the descent ray of largest central
/// angle) and ends at one of the remaining points, taken in ascending angle
/// order. Degree 1 has a single ramification point and an empty basis.
///
/// The construction is deterministic: identical inputs give identical
/// polylines.
pub fn standard_basis(p: &PolyC, base_radius: f64) -> Result<CycleBasis> {
    let d = p.degree().ok_or(Error::ZeroInput("singularity type"))?;
    if d == 0 {
        return Err(Error::DegreeTooSmall { got: 0, min: 1 });
    }
    if !(base_radius.is_finite() && base_radius > 0.0) {
        return Err(Error::InvalidCycle(format!("base radius {base_radius} must be positive")));
    }
    let curve = ExpCurveGZ::one_puncture_at_infinity(p)?;
    let points = ramification_points(&curve);
    if d == 1 {
        return Ok(CycleBasis { cycles: Vec::new(), base_radius });
    }

    let base = points[d - 1]; // largest central angle
    let cycles = points[..d - 1]
        .iter()
        .map(|&target| {
            let inbound_ray = Ray { angle: base.central_angle, start_radius: base_radius };
            let outbound_ray = Ray { angle: target.central_angle, start_radius: base_radius };
            RelativeCycle {
                source: base,
                target,
                connector: vec![
                    inbound_ray.inner_endpoint(),
                    Complex64::ZERO,
                    outbound_ray.inner_endpoint(),
                ],
                inbound_ray,
                outbound_ray,
                orientation: 1,
            }
        })
        .collect();
    Ok(CycleBasis { cycles, base_radius })
}
