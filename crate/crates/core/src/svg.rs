//! SVG rendering of a packed layout: dashed container centered on the
//! center of gravity, circles shaded white to red by mass, and a blue cross
//! marking the center of gravity.

use std::fmt::Write;

use crate::format::ResultFile;
use crate::geometry::{center_of_gravity, Point2};
use crate::model::{ProblemInstance, SolveResult};
use crate::{Error, Result};

const CANVAS: f64 = 800.0;

/// Fill color for a circle of `mass` on a linear white-to-red ramp over `[lo, hi]`.
pub fn mass_color(mass: f64, lo: f64, hi: f64) -> String {
    let t = if hi > lo { ((mass - lo) / (hi - lo)).clamp(0.0, 1.0) } else { 0.5 };
    let g = (255.0 * (1.0 - t)).round() as u8;
    format!("#ff{g:02x}{g:02x}")
}

/// Renders circles at `positions` inside a container of `container_radius`
/// centered on their center of gravity.
pub fn render(positions: &[Point2], radii: &[f64], masses: &[f64], container_radius: f64) -> Result<String> {
    if positions.is_empty() || positions.len() != radii.len() || radii.len() != masses.len() {
        return Err(Error::Export("positions, radii and masses must be non-empty and of equal length".into()));
    }
    if !(container_radius > 0.0) {
        return Err(Error::Export(format!("container radius must be positive, got {container_radius}")));
    }
    let cg = center_of_gravity(positions, masses).map_err(|e| Error::Export(e.to_string()))?;
    let lo = masses.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = masses.iter().copied().fold(f64::NEG_INFINITY, f64::max);

    let half = container_radius * 1.05;
    let scale = CANVAS / (2.0 * half);
    // SVG y grows downward.
    let to_svg = |p: Point2| ((p.x - cg.x + half) * scale, (half - (p.y - cg.y)) * scale);

    let mut out = String::new();
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{CANVAS}" height="{CANVAS}" viewBox="0 0 {CANVAS} {CANVAS}">"#
    );
    let _ = writeln!(out, r#"  <rect width="100%" height="100%" fill="white"/>"#);
    for ((p, r), m) in positions.iter().zip(radii).zip(masses) {
        let (x, y) = to_svg(*p);
        let _ = writeln!(
            out,
            r#"  <circle class="item" cx="{x:.3}" cy="{y:.3}" r="{:.3}" fill="{}" stroke="black" stroke-width="0.8"/>"#,
            r * scale,
            mass_color(*m, lo, hi)
        );
    }
    let (cx, cy) = to_svg(cg);
    let _ = writeln!(
        out,
        r#"  <circle class="container" cx="{cx:.3}" cy="{cy:.3}" r="{:.3}" fill="none" stroke="black" stroke-width="1.5" stroke-dasharray="6 4"/>"#,
        container_radius * scale
    );
    let arm = 8.0;
    let _ = writeln!(
        out,
        r#"  <path class="cg" d="M {:.3} {cy:.3} L {:.3} {cy:.3} M {cx:.3} {:.3} L {cx:.3} {:.3}" stroke="blue" stroke-width="2"/>"#,
        cx - arm,
        cx + arm,
        cy - arm,
        cy + arm
    );
    out.push_str("</svg>\n");
    Ok(out)
}

/// SVG of the best layout of a feasible run.
pub fn export_svg(result: &SolveResult, instance: &ProblemInstance) -> Result<String> {
    let best = result
        .best
        .as_ref()
        .ok_or_else(|| Error::Export("run has no feasible layout".into()))?;
    render(&best.positions, instance.radii(), instance.masses(), best.radius)
}

/// SVG from a stored result file.
pub fn export_result_file(file: &ResultFile) -> Result<String> {
    let radius = match (file.feasible, file.best_radius) {
        (true, Some(r)) => r,
        _ => return Err(Error::Export("result has no feasible layout".into())),
    };
    render(&file.positions, &file.radii, &file.masses, radius)
}
