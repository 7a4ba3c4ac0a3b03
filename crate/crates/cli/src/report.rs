//! JSON report builders. Complex numbers are serialized as `[re, im]`
//! two-element arrays throughout.

use num_complex::Complex64;
use serde_json::{json, Value};

use exp_periods::{
    CurveSpec, CycleBasis, DeRhamClass, ExpCurveGZ, NondegeneracyReport, PeriodValue, PolyC,
    RamPoint, RecoveryResult, ReductionCertificate, TorelliReport,
};

pub fn complex_pair(z: Complex64) -> Value {
    json!([z.re, z.im])
}

pub fn poly_coeffs(p: &PolyC) -> Value {
    Value::Array(p.coeffs().iter().map(|&c| complex_pair(c)).collect())
}

pub fn ram_points(points: &[RamPoint]) -> Value {
    Value::Array(
        points
            .iter()
            .map(|r| {
                json!({
                    "puncture": r.puncture_index,
                    "sector": r.sector_index,
                    "angle": r.central_angle,
                })
            })
            .collect(),
    )
}

pub fn surface_info(
    curve: &ExpCurveGZ,
    points: &[RamPoint],
    h1: Option<usize>,
    tol: f64,
    seed: u64,
) -> Value {
    let mut out = json!({
        "command": "surface-info",
        "tol": tol,
        "seed": seed,
        "curve": serde_json::to_value(CurveSpec::from_curve(curve)).unwrap(),
        "d_total": curve.d_total(),
        "ramification_points": ram_points(points),
    });
    if let Some(h1) = h1 {
        out["h1_dimension"] = json!(h1);
    }
    out
}

pub fn period_rows(
    p: &PolyC,
    basis: &CycleBasis,
    rows: &[Vec<PeriodValue>],
    maxpow: usize,
    tol: f64,
    seed: u64,
) -> Value {
    let row_values: Vec<Value> = basis
        .cycles()
        .iter()
        .zip(rows)
        .enumerate()
        .map(|(k, (cycle, row))| {
            json!({
                "cycle": k + 1,
                "source_angle": cycle.inbound_ray.angle,
                "target_angle": cycle.outbound_ray.angle,
                "values": row.iter().map(|v| complex_pair(v.value)).collect::<Vec<_>>(),
                "error_estimates": row.iter().map(|v| v.abs_error_estimate).collect::<Vec<_>>(),
                "truncation_radius": row.first().map_or(0.0, |v| v.truncation_radius),
                "evaluations": row.first().map_or(0, |v| v.evaluations),
            })
        })
        .collect();
    json!({
        "command": "periods",
        "poly": poly_coeffs(p),
        "tol": tol,
        "seed": seed,
        "maxpow": maxpow,
        "base_radius": basis.base_radius(),
        "rows": row_values,
        // Full cycle geometry (angles, radii, connector vertices).
        "cycles": serde_json::to_value(basis.cycles()).unwrap(),
    })
}

pub fn reduction(
    q: &PolyC,
    p: &PolyC,
    class: &DeRhamClass,
    cert: &ReductionCertificate,
    exact: bool,
    tol: f64,
    seed: u64,
) -> Value {
    json!({
        "command": "reduce",
        "q": poly_coeffs(q),
        "poly": poly_coeffs(p),
        "tol": tol,
        "seed": seed,
        "class": Value::Array(class.coeffs().iter().map(|&c| complex_pair(c)).collect()),
        "r": poly_coeffs(cert.r()),
        "residual": cert.residual(q, p, class),
        "is_exact": exact,
    })
}

pub fn recovery(
    p: &PolyC,
    nd: &NondegeneracyReport,
    rec: &RecoveryResult,
    evaluations: usize,
    tol: f64,
    seed: u64,
) -> Value {
    json!({
        "command": "recover",
        "poly": poly_coeffs(p),
        "tol": tol,
        "seed": seed,
        "degree": p.degree().unwrap_or(0),
        "rank": nd.rank,
        "min_singular_ratio": nd.min_sv_ratio,
        "singular_values": nd.singular_values,
        "kernel": Value::Array(rec.kernel_vector.iter().map(|&c| complex_pair(c)).collect()),
        "recovered_Pprime": poly_coeffs(&rec.recovered_pprime),
        "residuals": {
            "kernel_residual": rec.residual,
            "matrix_evaluations": evaluations,
        },
        "scale_note": rec.scale_note.convention,
    })
}

fn curve_analysis(a: &exp_periods::torelli::CurveAnalysis) -> Value {
    json!({
        "rank": a.rank,
        "min_singular_ratio": a.min_sv_ratio,
        "kernel": Value::Array(a.kernel.iter().map(|&c| complex_pair(c)).collect()),
        "recovered_Pprime": poly_coeffs(&a.recovered_pprime),
    })
}

pub fn verification(p1: &PolyC, p2: &PolyC, rep: &TorelliReport, tol: f64, seed: u64) -> Value {
    json!({
        "command": "verify",
        "poly1": poly_coeffs(p1),
        "poly2": poly_coeffs(p2),
        "tol": tol,
        "seed": seed,
        "degree": rep.degree,
        "verdict": rep.verdict.as_str(),
        "reason": rep.reason,
        "rank": rep.curve1.rank,
        "min_singular_ratio": rep.curve1.min_sv_ratio,
        "kernel": Value::Array(rep.curve1.kernel.iter().map(|&c| complex_pair(c)).collect()),
        "recovered_Pprime": poly_coeffs(&rep.curve1.recovered_pprime),
        "curve2": curve_analysis(&rep.curve2),
        "residuals": {
            "kernel_angle": if rep.kernel_angle.is_nan() { Value::Null } else { json!(rep.kernel_angle) },
            "recovery1": rep.curve1.recovery_residual,
            "recovery2": rep.curve2.recovery_residual,
            "distinguisher_norms": rep.distinguisher_norms,
        },
    })
}

pub fn case2(
    h_coeffs: &[Complex64],
    residues: &[exp_periods::Case2Residue],
    trunc: i64,
    tol: f64,
    seed: u64,
) -> Value {
    let max_abs = residues.iter().map(|r| r.value.norm()).fold(0.0, f64::max);
    json!({
        "command": "case2",
        "h": Value::Array(h_coeffs.iter().map(|&c| complex_pair(c)).collect()),
        "tol": tol,
        "seed": seed,
        "trunc": trunc,
        "residues": residues.iter().map(|r| json!({
            "k": r.k,
            "value": complex_pair(r.value),
            "tail_estimate": r.tail_estimate,
        })).collect::<Vec<_>>(),
        "max_abs": max_abs,
    })
}
