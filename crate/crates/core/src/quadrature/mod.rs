//! Numerical evaluation of exponential periods `int_gamma Q(z) e^{P(z)} dz`
//! over relative cycles, with controlled truncation of the infinite rays.
//!
//! The contour decomposes into straight segments: the inbound ray truncated
//! at a radius `T`, the connector polyline, and the outbound ray truncated at
//! the same `T`. Beyond `T` the integrand obeys
//! `|Q(z)| e^{Re P(z)} <= |Q|(t) e^{-c t^d}` with `c = |a_d|/2` once
//! `t >= T0 = max(1, 4 sum_{k<d} |a_k| / |a_d|)`, and the omitted tails are
//! charged to the error estimate through a closed-form incomplete-gamma
//! bound. The finite part is handled by a globally adaptive Gauss-Kronrod
//! 7-15 scheme with one shared panel tree for all requested integrands.
//!
//! Error semantics follow the usual double-precision reality: the requested
//! tolerance is absolute, and a result is accepted when its estimate reaches
//! either the tolerance or the rounding floor `~200 eps int |f|`, below which
//! no further refinement is meaningful. Failing both produces a
//! tolerance-not-met error that still carries the best values obtained.
//!
//! Everything here is pure and deterministic: the refinement schedule is a
//! priority queue with an explicit tie-break, so identical inputs produce
//! identical results regardless of caller-side threading.

mod gk;

use std::cmp::Ordering;
use std::collections::BinaryHeap;
use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::algebra::PolyC;
use crate::error::{Error, Result};
use crate::homology::RelativeCycle;

use gk::{gk15, Panel, EVALS_PER_PANEL};

const MAX_PANELS: usize = 4000;

/// One computed period with its accounting.
#[derive(Clone, Debug, Serialize)]
pub struct PeriodValue {
    #[serde(serialize_with = "serialize_c64")]
    pub value: Complex64,
    /// Panel estimates plus the analytic ray-tail bound; nonnegative.
    pub abs_error_estimate: f64,
    /// Radius at which the infinite rays were truncated.
    pub truncation_radius: f64,
    /// Integrand evaluation count of the shared refinement.
    pub evaluations: usize,
}

fn serialize_c64<S: serde::Serializer>(z: &Complex64, s: S) -> std::result::Result<S::Ok, S::Error> {
    [z.re, z.im].serialize(s)
}

/// Period of `Q(z) e^{P(z)} dz` over the cycle, to absolute tolerance `tol`.
pub fn period(q: &PolyC, p: &PolyC, cycle: &RelativeCycle, tol: f64) -> Result<PeriodValue> {
    let mut values = periods_of(std::slice::from_ref(q), p, cycle, tol)?;
    Ok(values.pop().unwrap())
}

/// Periods of `z^j e^{P(z)} dz` for `j = 0..=maxpow`, sharing one truncation
/// radius and one panel refinement so the row is internally consistent.
pub fn period_row(
    p: &PolyC,
    cycle: &RelativeCycle,
    maxpow: usize,
    tol: f64,
) -> Result<Vec<PeriodValue>> {
    let qs: Vec<PolyC> = (0..=maxpow).map(|j| PolyC::monomial(j, Complex64::ONE)).collect();
    periods_of(&qs, p, cycle, tol)
}

/// Shared implementation: all integrands `qs[j] e^P` over one cycle.
pub(crate) fn periods_of(
    qs: &[PolyC],
    p: &PolyC,
    cycle: &RelativeCycle,
    tol: f64,
) -> Result<Vec<PeriodValue>> {
    if !(tol.is_finite() && tol > 0.0) {
        return Err(Error::InvalidTolerance(tol));
    }
    let d = match p.degree() {
        Some(d) if d >= 1 => d,
        _ => return Err(Error::DegreeTooSmall { got: p.degree().unwrap_or(0), min: 1 }),
    };
    check_descent_ray(p, d, cycle.inbound_ray.angle)?;
    check_descent_ray(p, d, cycle.outbound_ray.angle)?;
    check_connector(cycle)?;

    let ncomp = qs.len();
    assert!(ncomp > 0);

    // Truncation radius: start where the descent bound is valid and grow
    // until every integrand's tail bound clears tol/4.
    let lead = p.coeff(d).norm();
    let rest: f64 = p.coeffs()[..d].iter().map(|c| c.norm()).sum();
    let t_zero = (4.0 * rest / lead).max(1.0);
    let rho = cycle.inbound_ray.start_radius.max(cycle.outbound_ray.start_radius);
    let mut trunc = t_zero.max(rho).max(1.0);
    let c = lead / 2.0;
    for _ in 0..400 {
        let worst = qs.iter().map(|q| ray_tail_bound(q, d, c, trunc)).fold(0.0, f64::max);
        if worst <= tol / 4.0 {
            break;
        }
        trunc *= 1.5;
    }
    let tail: Vec<f64> = qs.iter().map(|q| 2.0 * ray_tail_bound(q, d, c, trunc)).collect();

    // Contour segments, in traversal order.
    let mut segments: Vec<(Complex64, Complex64)> = Vec::new();
    push_ray_segments(&mut segments, cycle.inbound_ray.angle, trunc, cycle.inbound_ray.start_radius, true);
    for w in cycle.connector.windows(2) {
        subdivide_toward_origin(&mut segments, w[0], w[1]);
    }
    push_ray_segments(&mut segments, cycle.outbound_ray.angle, trunc, cycle.outbound_ray.start_radius, false);
    segments.retain(|(a, b)| (a - b).norm() > 0.0);

    let integrand = |z: Complex64, out: &mut [Complex64]| {
        let ez = p.eval(z).exp();
        for (slot, q) in out.iter_mut().zip(qs) {
            *slot = q.eval(z) * ez;
        }
    };

    // Globally adaptive refinement over one shared panel tree.
    let mut heap: BinaryHeap<HeapEntry> = BinaryHeap::new();
    let mut seq: u64 = 0;
    let mut err_tot = vec![0.0f64; ncomp];
    let mut resabs_tot = vec![0.0f64; ncomp];
    let mut evaluations = 0usize;

    let push = |panel: Panel,
                    heap: &mut BinaryHeap<HeapEntry>,
                    err_tot: &mut [f64],
                    resabs_tot: &mut [f64],
                    seq: &mut u64| {
        for j in 0..ncomp {
            err_tot[j] += panel.errors[j];
            resabs_tot[j] += panel.resabs[j];
        }
        heap.push(HeapEntry { key: panel.worst_error(), seq: *seq, panel });
        *seq += 1;
    };

    for &(a, b) in &segments {
        let panel = gk15(&integrand, a, b, ncomp).map_err(|at| Error::NonFiniteIntegrand { at })?;
        evaluations += EVALS_PER_PANEL;
        push(panel, &mut heap, &mut err_tot, &mut resabs_tot, &mut seq);
    }

    let mut panels = segments.len();
    loop {
        let needs_work = (0..ncomp).any(|j| {
            err_tot[j] > (tol / 2.0).max(100.0 * f64::EPSILON * resabs_tot[j])
        });
        if !needs_work || panels >= MAX_PANELS {
            break;
        }
        let top = heap.peek().expect("heap cannot be empty while refining");
        if top.panel.at_rounding_floor() || (top.panel.b - top.panel.a).norm() < 1e-290 {
            break;
        }
        let parent = heap.pop().unwrap().panel;
        for j in 0..ncomp {
            err_tot[j] -= parent.errors[j];
            resabs_tot[j] -= parent.resabs[j];
        }
        let mid = 0.5 * (parent.a + parent.b);
        for (a, b) in [(parent.a, mid), (mid, parent.b)] {
            let panel = gk15(&integrand, a, b, ncomp).map_err(|at| Error::NonFiniteIntegrand { at })?;
            evaluations += EVALS_PER_PANEL;
            push(panel, &mut heap, &mut err_tot, &mut resabs_tot, &mut seq);
        }
        panels += 1;
    }

    // Deterministic final summation: panels in creation order.
    let mut final_panels: Vec<HeapEntry> = heap.into_vec();
    final_panels.sort_by_key(|e| e.seq);
    let mut values = vec![Complex64::ZERO; ncomp];
    let mut err_final = vec![0.0f64; ncomp];
    let mut resabs_final = vec![0.0f64; ncomp];
    for e in &final_panels {
        for j in 0..ncomp {
            values[j] += e.panel.values[j];
            err_final[j] += e.panel.errors[j];
            resabs_final[j] += e.panel.resabs[j];
        }
    }

    let out: Vec<PeriodValue> = (0..ncomp)
        .map(|j| PeriodValue {
            value: values[j],
            abs_error_estimate: err_final[j] + tail[j],
            truncation_radius: trunc,
            evaluations,
        })
        .collect();

    let achieved = out.iter().map(|v| v.abs_error_estimate).fold(0.0, f64::max);
    let ok = out
        .iter()
        .zip(&resabs_final)
        .all(|(v, &ra)| v.abs_error_estimate <= tol.max(200.0 * f64::EPSILON * ra));
    if ok {
        Ok(out)
    } else {
        Err(Error::ToleranceNotMet { requested: tol, achieved, partial: out })
    }
}

struct HeapEntry {
    key: f64,
    seq: u64,
    panel: Panel,
}

impl PartialEq for HeapEntry {
    fn eq(&self, other: &Self) -> bool {
        self.key == other.key && self.seq == other.seq
    }
}
impl Eq for HeapEntry {}
impl PartialOrd for HeapEntry {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}
impl Ord for HeapEntry {
    fn cmp(&self, other: &Self) -> Ordering {
        self.key
            .total_cmp(&other.key)
            .then_with(|| self.seq.cmp(&other.seq))
    }
}

/// Split an initial segment until each piece is no longer than its distance
/// from the origin (with a floor of 4). A long chord heading into the origin
/// otherwise risks placing all fifteen nodes outside the integrand's live
/// region and silently aliasing it away.
fn subdivide_toward_origin(segments: &mut Vec<(Complex64, Complex64)>, a: Complex64, b: Complex64) {
    let len = (b - a).norm();
    if len <= a.norm().min(b.norm()).max(4.0) {
        segments.push((a, b));
    } else {
        let mid = 0.5 * (a + b);
        subdivide_toward_origin(segments, a, mid);
        subdivide_toward_origin(segments, mid, b);
    }
}

/// Geometric subdivision of a truncated ray so the initial panels already
/// respect the exponential length scales. `inward` orients the traversal
/// from the truncation radius toward the start radius.
fn push_ray_segments(
    segments: &mut Vec<(Complex64, Complex64)>,
    angle: f64,
    trunc: f64,
    start: f64,
    inward: bool,
) {
    if trunc <= start {
        return;
    }
    let dir = Complex64::from_polar(1.0, angle);
    let mut radii = vec![start];
    let mut r = start;
    while r * 2.0 < trunc {
        r *= 2.0;
        radii.push(r);
    }
    radii.push(trunc);
    let mut pieces: Vec<(Complex64, Complex64)> =
        radii.windows(2).map(|w| (dir * w[0], dir * w[1])).collect();
    if inward {
        pieces.reverse();
        for piece in pieces.iter_mut() {
            *piece = (piece.1, piece.0);
        }
    }
    segments.extend(pieces);
}

/// Bound on `int_T^inf |q(t e^{i theta})| e^{-c t^d} dt` for any ray, via
/// `int_T^inf t^k e^{-c t^d} dt <= (1/d) int_{T^d}^inf u^m e^{-c u} du` with
/// `m = ceil((k+1)/d - 1)` and `T >= 1`, the right side in closed form.
fn ray_tail_bound(q: &PolyC, d: usize, c: f64, trunc: f64) -> f64 {
    let mut total = 0.0;
    let u0 = trunc.powi(d as i32);
    for (k, coef) in q.coeffs().iter().enumerate() {
        let a = coef.norm();
        if a == 0.0 {
            continue;
        }
        let m = ((k + 1) as f64 / d as f64 - 1.0).ceil().max(0.0) as u32;
        total += a / d as f64 * upper_gamma_int(m, c, u0);
    }
    total
}

/// `int_U^inf u^m e^{-c u} du = e^{-cU} sum_{i=0..m} (m!/i!) U^i / c^{m+1-i}`.
fn upper_gamma_int(m: u32, c: f64, u: f64) -> f64 {
    let e = (-c * u).exp();
    if e == 0.0 {
        return 0.0;
    }
    let mut sum = 0.0;
    let mut fact_ratio = 1.0; // m!/i! for i = m down to 0
    for i in (0..=m).rev() {
        sum += fact_ratio * u.powi(i as i32) / c.powi((m + 1 - i) as i32);
        if i > 0 {
            fact_ratio *= i as f64;
        }
    }
    e * sum
}

fn check_descent_ray(p: &PolyC, d: usize, angle: f64) -> Result<()> {
    let arg = p.coeff(d).arg();
    let ok = (0..d).any(|m| {
        let theta = (PI - arg + 2.0 * PI * m as f64) / d as f64;
        angle_distance(theta, angle) < 1e-8
    });
    if ok {
        Ok(())
    } else {
        Err(Error::NonDescentRay { angle })
    }
}

fn angle_distance(a: f64, b: f64) -> f64 {
    let two_pi = 2.0 * PI;
    let mut delta = (a - b) % two_pi;
    if delta < 0.0 {
        delta += two_pi;
    }
    delta.min(two_pi - delta)
}

fn check_connector(cycle: &RelativeCycle) -> Result<()> {
    let inner_in = cycle.inbound_ray.inner_endpoint();
    let inner_out = cycle.outbound_ray.inner_endpoint();
    let tol = 1e-9 * (1.0 + cycle.inbound_ray.start_radius.max(cycle.outbound_ray.start_radius));
    if cycle.connector.len() < 2 {
        // No connector segments at all: the rays must already meet.
        if (inner_in - inner_out).norm() > tol {
            return Err(Error::InvalidCycle(
                "connector is empty but the ray endpoints do not coincide".into(),
            ));
        }
        return Ok(());
    }
    if (cycle.connector[0] - inner_in).norm() > tol {
        return Err(Error::InvalidCycle("connector does not start at the inbound ray endpoint".into()));
    }
    if (cycle.connector[cycle.connector.len() - 1] - inner_out).norm() > tol {
        return Err(Error::InvalidCycle("connector does not end at the outbound ray endpoint".into()));
    }
    Ok(())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::homology::{default_base_radius, standard_basis};

    const TOL: f64 = 1e-10;
    const SQRT_PI: f64 = 1.772_453_850_905_516;

    fn zsq() -> PolyC {
        PolyC::from_real(&[0.0, 0.0, 1.0])
    }

    fn gaussian_cycle() -> RelativeCycle {
        let p = zsq();
        standard_basis(&p, default_base_radius(&p)).unwrap().cycles()[0].clone()
    }

    /// Independent oracle: the real-line integral of e^{-t^2} by composite
    /// Simpson, nothing shared with the contour machinery.
    fn gauss_oracle() -> f64 {
        let (a, b, n) = (-9.0f64, 9.0f64, 20_000usize);
        let h = (b - a) / n as f64;
        let f = |t: f64| (-t * t).exp();
        let mut s = f(a) + f(b);
        for i in 1..n {
            let w = if i % 2 == 1 { 4.0 } else { 2.0 };
            s += w * f(a + i as f64 * h);
        }
        s * h / 3.0
    }

    #[test]
    fn gaussian_period_matches_real_line_oracle() {
        let pv = period(&PolyC::one(), &zsq(), &gaussian_cycle(), TOL).unwrap();
        let expected = Complex64::new(0.0, gauss_oracle());
        assert!((pv.value - expected).norm() < 1e-9, "got {}", pv.value);
        assert!((pv.value.im - SQRT_PI).abs() < 1e-9);
        assert!(pv.abs_error_estimate <= TOL);
        assert!(pv.evaluations > 0);
    }

    #[test]
    fn derivative_of_exponential_integrates_to_zero() {
        // Q = P' makes Q e^P dz exact; endpoints sit where e^P vanishes.
        let p = zsq();
        let pv = period(&p.derivative(), &p, &gaussian_cycle(), TOL).unwrap();
        assert!(pv.value.norm() <= 10.0 * TOL);
    }

    #[test]
    fn row_for_square_matches_parity_and_parts_oracles() {
        // By parts: z^2 e^{z^2} dz = d(z e^{z^2}/2) - e^{z^2} dz / 2, and odd
        // powers vanish on the symmetric cycle.
        let row = period_row(&zsq(), &gaussian_cycle(), 3, TOL).unwrap();
        assert_eq!(row.len(), 4);
        assert!((row[0].value - Complex64::new(0.0, SQRT_PI)).norm() < 1e-9);
        assert!(row[1].value.norm() < 1e-9);
        assert!((row[2].value - Complex64::new(0.0, -SQRT_PI / 2.0)).norm() < 1e-9);
        assert!(row[3].value.norm() < 1e-9);
        let t = row[0].truncation_radius;
        assert!(row.iter().all(|v| v.truncation_radius == t));
    }

    #[test]
    fn reversal_negates_the_period() {
        let p = zsq();
        let gamma = gaussian_cycle();
        let forward = period(&PolyC::one(), &p, &gamma, TOL).unwrap();
        let backward = period(&PolyC::one(), &p, &gamma.reverse(), TOL).unwrap();
        assert!((forward.value + backward.value).norm() <= 2.0 * TOL);
    }

    #[test]
    fn exact_forms_have_tiny_periods_for_random_r() {
        // Q = R' + R P' for a handful of fixed "random" R.
        let p = PolyC::from_real(&[0.0, -1.0, 0.0, 1.0]); // z^3 - z
        let basis = standard_basis(&p, default_base_radius(&p)).unwrap();
        let rs = [
            PolyC::from_real(&[0.3, -1.2, 0.0, 0.7, 0.1]),
            PolyC::from_real(&[-0.5, 0.25, 1.5]),
            PolyC::new(vec![
                Complex64::new(0.2, -0.4),
                Complex64::new(0.0, 1.0),
                Complex64::new(-0.3, 0.3),
                Complex64::new(0.05, 0.0),
            ]),
        ];
        for r in &rs {
            let q = &r.derivative() + &(r * &p.derivative());
            for gamma in basis.cycles() {
                let pv = period(&q, &p, gamma, TOL).unwrap();
                assert!(pv.value.norm() <= 10.0 * TOL, "|period| = {}", pv.value.norm());
            }
        }
    }

    #[test]
    fn non_descent_ray_rejected() {
        // A cycle built for z^2 is degenerate data for z^3.
        let gamma = gaussian_cycle();
        let p3 = PolyC::from_real(&[0.0, 0.0, 0.0, 1.0]);
        assert!(matches!(
            period(&PolyC::one(), &p3, &gamma, TOL),
            Err(Error::NonDescentRay { .. })
        ));
    }

    #[test]
    fn sub_floor_tolerance_is_served_at_the_rounding_floor() {
        // 1e-300 is far below double precision; the result is accepted at the
        // rounding floor and still carries an honest estimate.
        let pv = period(&PolyC::one(), &zsq(), &gaussian_cycle(), 1e-300).unwrap();
        assert!((pv.value - Complex64::new(0.0, SQRT_PI)).norm() < 1e-12);
        assert!(pv.abs_error_estimate > 1e-300);
        assert!(pv.abs_error_estimate < 1e-12);
    }

    #[test]
    fn hopeless_oscillation_flags_but_keeps_best_value() {
        // P = z^2 + 20000z oscillates ~20000 rad per unit along the contour;
        // the panel budget cannot resolve that at 1e-10.
        let p = PolyC::from_real(&[0.0, 20000.0, 1.0]);
        let basis = standard_basis(&p, default_base_radius(&p)).unwrap();
        let r = period(&PolyC::one(), &p, &basis.cycles()[0], 1e-10);
        match r {
            Err(Error::ToleranceNotMet { partial, achieved, requested }) => {
                assert_eq!(partial.len(), 1);
                assert!(achieved > requested);
                assert!(partial[0].value.is_finite());
            }
            other => panic!("expected tolerance-not-met, got {other:?}"),
        }
    }

    #[test]
    fn results_are_deterministic() {
        let p = PolyC::from_real(&[0.1, 0.5, 0.0, 0.0, 1.0]);
        let basis = standard_basis(&p, default_base_radius(&p)).unwrap();
        let a = period_row(&p, &basis.cycles()[1], 3, TOL).unwrap();
        let b = period_row(&p, &basis.cycles()[1], 3, TOL).unwrap();
        for (x, y) in a.iter().zip(&b) {
            assert_eq!(x.value, y.value);
            assert_eq!(x.abs_error_estimate, y.abs_error_estimate);
        }
    }

    #[test]
    fn mismatched_empty_connector_rejected() {
        let mut gamma = gaussian_cycle();
        gamma.connector.clear();
        assert!(matches!(
            period(&PolyC::one(), &zsq(), &gamma, TOL),
            Err(Error::InvalidCycle(_))
        ));
    }

    #[test]
    fn zero_tolerance_rejected() {
        assert!(matches!(
            period(&PolyC::one(), &zsq(), &gaussian_cycle(), 0.0),
            Err(Error::InvalidTolerance(_))
        ));
    }

    #[test]
    fn tail_bound_decreases_in_radius() {
        let q = PolyC::from_real(&[1.0, 0.0, 2.0, 0.0, 0.0, 1.0]);
        let b1 = ray_tail_bound(&q, 2, 0.5, 4.0);
        let b2 = ray_tail_bound(&q, 2, 0.5, 8.0);
        assert!(b2 < b1);
        assert!(b2 >= 0.0);
    }
}
