//! Standalone SVG figures: curves in the plane and phase portraits.

use std::fmt::Write;

use imcf_soliton::phaseplane::FixedDirection;
use imcf_soliton::{Branch, PhaseTrajectory, PlanarPoint, SolitonParams};

const WIDTH: f64 = 800.0;
const MARGIN: f64 = 20.0;
const COLORS: [&str; 4] = ["#1f4e9c", "#c2410c", "#15803d", "#7e22ce"];

pub struct CurvePlot {
    pub branch: Branch,
    pub points: Vec<PlanarPoint>,
    pub cusps: Vec<PlanarPoint>,
}

/// Equal-aspect map from data coordinates to pixels (y up).
struct Viewport {
    min: PlanarPoint,
    scale: f64,
    offset: (f64, f64),
    height: f64,
}

impl Viewport {
    fn fit<'a>(points: impl Iterator<Item = &'a PlanarPoint>) -> Self {
        let (mut lo, mut hi) = (
            PlanarPoint::new(f64::INFINITY, f64::INFINITY),
            PlanarPoint::new(f64::NEG_INFINITY, f64::NEG_INFINITY),
        );
        for p in points.filter(|p| p.is_finite()) {
            lo = PlanarPoint::new(lo.re.min(p.re), lo.im.min(p.im));
            hi = PlanarPoint::new(hi.re.max(p.re), hi.im.max(p.im));
        }
        if !lo.is_finite() {
            lo = PlanarPoint::new(-1.0, -1.0);
            hi = PlanarPoint::new(1.0, 1.0);
        }
        let span = (hi.re - lo.re).max(hi.im - lo.im).max(1e-12);
        let dw = (hi.re - lo.re).max(1e-9 * span);
        let dh = (hi.im - lo.im).max(1e-9 * span);
        let height = (WIDTH * dh / dw).clamp(160.0, 1600.0).round();
        let scale = ((WIDTH - 2.0 * MARGIN) / dw).min((height - 2.0 * MARGIN) / dh);
        let offset = ((WIDTH - scale * dw) / 2.0, (height - scale * dh) / 2.0);
        Self {
            min: lo,
            scale,
            offset,
            height,
        }
    }

    fn map(&self, p: PlanarPoint) -> (f64, f64) {
        (
            self.offset.0 + self.scale * (p.re - self.min.re),
            self.height - self.offset.1 - self.scale * (p.im - self.min.im),
        )
    }
}

fn header(out: &mut String, height: f64, title: &str) {
    let _ = writeln!(out, r#"<?xml version="1.0" encoding="UTF-8"?>"#);
    let _ = writeln!(
        out,
        r#"<svg xmlns="http://www.w3.org/2000/svg" width="{WIDTH}" height="{height}" viewBox="0 0 {WIDTH} {height}">"#
    );
    let _ = writeln!(out, "<!-- imcf-soliton {} -->", env!("CARGO_PKG_VERSION"));
    let _ = writeln!(out, "<title>{title}</title>");
    let _ = writeln!(out, r#"<rect width="100%" height="100%" fill="white"/>"#);
}

fn polyline(out: &mut String, class: &str, extra: &str, color: &str, pixels: &[(f64, f64)]) {
    if pixels.len() < 2 {
        return;
    }
    let pts: Vec<String> = pixels
        .iter()
        .map(|(x, y)| format!("{x:.2},{y:.2}"))
        .collect();
    let _ = writeln!(
        out,
        r#"<polyline class="{class}"{extra} fill="none" stroke="{color}" stroke-width="1.5" points="{}"/>"#,
        pts.join(" ")
    );
}

pub fn curve_svg(params: SolitonParams, plots: &[CurvePlot]) -> String {
    let vp = Viewport::fit(plots.iter().flat_map(|p| p.points.iter().chain(&p.cusps)));
    let mut out = String::new();
    let names: Vec<&str> = plots.iter().map(|p| p.branch.name()).collect();
    header(
        &mut out,
        vp.height,
        &format!("c = {}, d = {}: {}", params.c, params.d, names.join(", ")),
    );
    let (ox, oy) = vp.map(PlanarPoint::new(0.0, 0.0));
    let _ = writeln!(
        out,
        r##"<path class="origin" data-x="{ox:.2}" data-y="{oy:.2}" d="M {:.2} {oy:.2} H {:.2} M {ox:.2} {:.2} V {:.2}" stroke="#999" stroke-width="1"/>"##,
        ox - 5.0,
        ox + 5.0,
        oy - 5.0,
        oy + 5.0
    );
    for (i, plot) in plots.iter().enumerate() {
        let color = COLORS[i % COLORS.len()];
        let pixels: Vec<(f64, f64)> = plot
            .points
            .iter()
            .filter(|p| p.is_finite())
            .map(|&p| vp.map(p))
            .collect();
        polyline(
            &mut out,
            "curve",
            &format!(r#" data-branch="{}""#, plot.branch),
            color,
            &pixels,
        );
        for &c in &plot.cusps {
            let (x, y) = vp.map(c);
            let _ = writeln!(
                out,
                r#"<circle class="cusp" data-branch="{}" cx="{x:.2}" cy="{y:.2}" r="4" fill="none" stroke="black"/>"#,
                plot.branch
            );
        }
    }
    out.push_str("</svg>\n");
    out
}

/// Half-width of the square `(nu, tau)` region drawn in phase portraits.
pub const PHASE_BOX: f64 = 2.5;

/// Splits a trajectory into the pieces that stay inside the drawn box.
fn clipped(traj: &PhaseTrajectory) -> Vec<Vec<PlanarPoint>> {
    let mut pieces = vec![Vec::new()];
    for s in &traj.states {
        if s.nu.abs() <= PHASE_BOX && s.tau.abs() <= PHASE_BOX {
            pieces
                .last_mut()
                .unwrap()
                .push(PlanarPoint::new(s.nu, s.tau));
        } else if !pieces.last().unwrap().is_empty() {
            pieces.push(Vec::new());
        }
    }
    pieces.retain(|p| p.len() > 1);
    pieces
}

/// Portrait in the `(nu, tau)` plane with one straight line per fixed direction.
pub fn phase_svg(
    params: SolitonParams,
    fixed: &[FixedDirection<f64>],
    trajectories: &[PhaseTrajectory],
) -> String {
    let corners = [
        PlanarPoint::new(-PHASE_BOX, -PHASE_BOX),
        PlanarPoint::new(PHASE_BOX, PHASE_BOX),
    ];
    let vp = Viewport::fit(corners.iter());
    let mut out = String::new();
    header(
        &mut out,
        vp.height,
        &format!("phase plane, c = {}, d = {}", params.c, params.d),
    );
    for (a, b) in [
        (
            PlanarPoint::new(-PHASE_BOX, 0.0),
            PlanarPoint::new(PHASE_BOX, 0.0),
        ),
        (
            PlanarPoint::new(0.0, -PHASE_BOX),
            PlanarPoint::new(0.0, PHASE_BOX),
        ),
    ] {
        let (p, q) = (vp.map(a), vp.map(b));
        let _ = writeln!(
            out,
            r##"<line class="axis" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#999" stroke-width="0.5"/>"##,
            p.0, p.1, q.0, q.1
        );
    }
    for traj in trajectories {
        for piece in clipped(traj) {
            let pixels: Vec<(f64, f64)> = piece.iter().map(|&p| vp.map(p)).collect();
            polyline(&mut out, "trajectory", "", COLORS[0], &pixels);
        }
    }
    for f in fixed {
        // direction (nu, tau) = (cos phi, sin phi), stretched to the box edge
        let (s, c) = f.phi.sin_cos();
        let reach = PHASE_BOX / c.abs().max(s.abs());
        let a = vp.map(PlanarPoint::new(-reach * c, -reach * s));
        let b = vp.map(PlanarPoint::new(reach * c, reach * s));
        let _ = writeln!(
            out,
            r##"<line class="fixed-direction" data-tan-phi="{}" x1="{:.2}" y1="{:.2}" x2="{:.2}" y2="{:.2}" stroke="#c2410c" stroke-width="2"/>"##,
            f.tan_phi, a.0, a.1, b.0, b.1
        );
    }
    out.push_str("</svg>\n");
    out
}
