//! Polynomial root finding via Durand–Kerner iteration.
//!
//! Desk-scale: degrees stay in the single digits, roots are polished with a
//! few Newton steps and clustered to recover multiplicities.

use num_complex::Complex64;

use super::poly::PolyC;

const MAX_ITERS: usize = 400;

/// All roots of `p`, with multiplicity, as `(root, multiplicity)` pairs.
///
/// Exact zero roots (trailing zero low-order coefficients) are peeled off
/// structurally before iterating. Returns an empty list for constants; the
/// zero polynomial is the caller's responsibility.
pub fn roots_with_multiplicity(p: &PolyC) -> Vec<(Complex64, usize)> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }

    // Peel exact roots at the origin.
    let mut low = 0;
    while low < deg && p.coeff(low) == Complex64::ZERO {
        low += 1;
    }
    let reduced = PolyC::new(p.coeffs()[low..].to_vec());

    let mut found = Vec::new();
    if low > 0 {
        found.push((Complex64::ZERO, low));
    }
    let raw = durand_kerner(&reduced);
    found.extend(cluster(&raw));
    found
}

fn durand_kerner(p: &PolyC) -> Vec<Complex64> {
    let Some(deg) = p.degree() else {
        return Vec::new();
    };
    if deg == 0 {
        return Vec::new();
    }
    let lead = p.leading().unwrap();
    if deg == 1 {
        return vec![-p.coeff(0) / lead];
    }

    // Cauchy bound for the root radius, iterates started on a circle with an
    // irrational-ish phase offset to break symmetries.
    let radius = 1.0
        + p.coeffs()[..deg]
            .iter()
            .map(|c| (c / lead).norm())
            .fold(0.0, f64::max);
    let centroid = -p.coeff(deg - 1) / (lead * deg as f64);
    let mut xs: Vec<Complex64> = (0..deg)
        .map(|k| {
            let angle = 2.0 * std::f64::consts::PI * k as f64 / deg as f64 + 0.7;
            centroid + 0.5 * radius * Complex64::new(angle.cos(), angle.sin())
        })
        .collect();

    for _ in 0..MAX_ITERS {
        let mut max_step = 0.0f64;
        for i in 0..deg {
            let mut denom = lead;
            for j in 0..deg {
                if j != i {
                    denom *= xs[i] - xs[j];
                }
            }
            if denom == Complex64::ZERO {
                // Collided iterates: nudge and continue.
                xs[i] += Complex64::new(1e-8, 1e-8);
                continue;
            }
            let step = p.eval(xs[i]) / denom;
            xs[i] -= step;
            max_step = max_step.max(step.norm() / (1.0 + xs[i].norm()));
        }
        if max_step < 1e-15 {
            break;
        }
    }

    // Newton polish; harmless for multiple roots, sharpens simple ones.
    let dp = p.derivative();
    for x in xs.iter_mut() {
        for _ in 0..3 {
            let d = dp.eval(*x);
            if d.norm() > 1e-300 {
                let step = p.eval(*x) / d;
                if step.norm() < 1.0 + x.norm() {
                    *x -= step;
                }
            }
        }
    }
    xs
}

/// Group numerically coincident roots. A cluster of m iterates around an
/// m-fold root has radius on the order of eps^(1/m), so the merge tolerance
/// is deliberately loose.
fn cluster(raw: &[Complex64]) -> Vec<(Complex64, usize)> {
    let mut out: Vec<(Complex64, usize)> = Vec::new();
    for &z in raw {
        match out
            .iter_mut()
            .find(|(w, _)| (z - *w).norm() <= 1e-4 * (1.0 + w.norm()))
        {
            Some((w, m)) => {
                // Running mean keeps the representative centered.
                *w = (*w * *m as f64 + z) / (*m as f64 + 1.0);
                *m += 1;
            }
            None => out.push((z, 1)),
        }
    }
    out
}
