//! Minimal static SVG output: descent-sector diagrams and contour sketches.

use std::fmt::Write as _;

use exp_periods::{CycleBasis, RamPoint};

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#8c564b"];

/// Descent-sector diagram: one panel per puncture, rays at the central
/// angles of its ramification points.
pub fn sectors_svg(points: &[RamPoint]) -> String {
    let punctures = points.iter().map(|r| r.puncture_index).max().map_or(0, |m| m + 1);
    let panel = 220.0;
    let width = panel * punctures as f64;
    let mut svg = String::new();
    let _ = write!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {width} {panel}" font-family="monospace" font-size="10">"##
    );
    for pi in 0..punctures {
        let cx = panel * pi as f64 + panel / 2.0;
        let cy = panel / 2.0;
        let r = panel * 0.38;
        let _ = write!(
            svg,
            r##"<circle cx="{cx}" cy="{cy}" r="{r}" fill="none" stroke="#999" stroke-dasharray="4 3"/>"##
        );
        for ram in points.iter().filter(|p| p.puncture_index == pi) {
            // SVG y grows downward; flip the imaginary axis.
            let x = cx + r * ram.central_angle.cos();
            let y = cy - r * ram.central_angle.sin();
            let color = PALETTE[ram.sector_index % PALETTE.len()];
            let _ = write!(
                svg,
                r##"<line x1="{cx}" y1="{cy}" x2="{x}" y2="{y}" stroke="{color}" stroke-width="1.5"/>"##
            );
            let lx = cx + (r + 12.0) * ram.central_angle.cos() - 6.0;
            let ly = cy - (r + 12.0) * ram.central_angle.sin() + 3.0;
            let _ = write!(svg, r##"<text x="{lx}" y="{ly}" fill="{color}">w{}</text>"##, ram.sector_index);
        }
        let _ = write!(
            svg,
            r##"<text x="{}" y="{}" fill="#333">puncture {pi}</text>"##,
            panel * pi as f64 + 8.0,
            14.0
        );
    }
    svg.push_str("</svg>");
    svg
}

/// Contour sketch of the basis cycles: truncated rays plus connectors.
pub fn contours_svg(basis: &CycleBasis, ray_len: f64) -> String {
    let size = 420.0;
    let scale = (size * 0.45) / ray_len.max(1.0);
    let c = size / 2.0;
    let to_px = |z: num_complex::Complex64| (c + scale * z.re, c - scale * z.im);

    let mut svg = String::new();
    let _ = write!(
        svg,
        r##"<svg xmlns="http://www.w3.org/2000/svg" viewBox="0 0 {size} {size}" font-family="monospace" font-size="10">"##
    );
    let _ = write!(
        svg,
        r##"<circle cx="{c}" cy="{c}" r="2.5" fill="#333"/><text x="{}" y="{}" fill="#333">0</text>"##,
        c + 5.0,
        c + 12.0
    );
    for (k, cycle) in basis.cycles().iter().enumerate() {
        let color = PALETTE[k % PALETTE.len()];
        let mut pts = Vec::new();
        let dir_in = num_complex::Complex64::from_polar(1.0, cycle.inbound_ray.angle);
        let dir_out = num_complex::Complex64::from_polar(1.0, cycle.outbound_ray.angle);
        pts.push(dir_in * ray_len);
        pts.push(dir_in * cycle.inbound_ray.start_radius);
        pts.extend(cycle.connector.iter().copied());
        pts.push(dir_out * cycle.outbound_ray.start_radius);
        pts.push(dir_out * ray_len);
        let path: Vec<String> = pts
            .iter()
            .map(|&z| {
                let (x, y) = to_px(z);
                format!("{x:.2},{y:.2}")
            })
            .collect();
        let _ = write!(
            svg,
            r##"<polyline points="{}" fill="none" stroke="{color}" stroke-width="1.5"/>"##,
            path.join(" ")
        );
        let (lx, ly) = to_px(dir_out * ray_len * 0.92);
        let _ = write!(svg, r##"<text x="{lx:.2}" y="{ly:.2}" fill="{color}">g{}</text>"##, k + 1);
    }
    svg.push_str("</svg>");
    svg
}
