//! Verification of generated branches and of curve files.
//!
//! All residuals are reported both as absolute values and relative to the
//! local length scale `|x| + |1/k|`; the pass/fail gates use the relative
//! values, since every residual scales linearly with the curve.

use anyhow::{bail, Result};
use imcf_soliton::diffgeo::{
    find_cusps_numeric, frame_from_jet, residual_profile, sample_curve, stencil_jets,
};
use imcf_soliton::flowcheck::sample_flow_residual;
use imcf_soliton::{
    Branch, BranchCurve, CurveSample, DerivativeMode, PlanarPoint, SolitonError, SolitonLaw,
    SolitonParams, ThetaWindow, Tolerances,
};
use serde::Serialize;

use crate::emit::{CurveFile, Row};

const MAX_LISTED: usize = 50;

#[derive(Debug, Serialize)]
pub struct BranchReport {
    pub branch: Option<Branch>,
    pub samples: usize,
    pub max_residual: f64,
    pub max_rel_residual: f64,
    /// Worst over samples with |x'| at least the summed term size (generated) or a usable stencil (input).
    pub max_fd_residual: Option<f64>,
    pub max_flow_residual: f64,
    pub cusps_found: Vec<f64>,
    pub cusps_expected: Vec<f64>,
    pub pass: bool,
    pub failures: Vec<String>,
    /// Sample indices (generated curves) or 1-based file lines (input files).
    pub offending_rows: Vec<u64>,
}

#[derive(Debug, Serialize)]
pub struct VerifyReport {
    pub pass: bool,
    pub params: Option<SolitonParams>,
    pub reports: Vec<BranchReport>,
}

impl VerifyReport {
    pub fn new(params: Option<SolitonParams>, reports: Vec<BranchReport>) -> Self {
        Self {
            pass: reports.iter().all(|r| r.pass),
            params,
            reports,
        }
    }
}

fn length_scale(s: &CurveSample) -> f64 {
    s.position.norm() + s.curvature.recip().abs()
}

fn cusps_agree(found: &[f64], expected: &[f64], tol: f64) -> bool {
    found.len() == expected.len()
        && found
            .iter()
            .zip(expected)
            .all(|(a, b)| (a - b).abs() <= tol)
}

/// Samples `branch` and runs the analytic, finite-difference, flow-law and
/// cusp checks.
pub fn verify_generated(
    params: SolitonParams,
    branch: Branch,
    window: ThetaWindow,
    samples: usize,
    tol: &Tolerances,
) -> Result<BranchReport> {
    let analytic = sample_curve(
        params,
        branch,
        window,
        samples,
        tol,
        DerivativeMode::Analytic,
    )?;
    let profile = residual_profile(&analytic)?;
    let fd = sample_curve(
        params,
        branch,
        window,
        samples,
        tol,
        DerivativeMode::FiniteDifference { step: tol.fd_step },
    )?;
    let fd_profile = residual_profile(&fd)?;

    let curve = BranchCurve::with_tolerance(params, branch, tol.discriminant)?;
    let law = SolitonLaw::for_branch(params, branch);
    let mut offending = Vec::new();
    let mut max_flow = 0.0f64;
    let mut max_fd_gated = 0.0f64;
    for (i, s) in analytic.samples.iter().enumerate() {
        let flow = sample_flow_residual(law, s, tol.flow_dt)? / length_scale(s);
        max_flow = max_flow.max(flow);
        let rel = profile.per_sample[i] / length_scale(s);
        // second differences lose about 4 eps M / (h^2 |x'|) to rounding, M the
        // summed term size, so the finite-difference bound applies where |x'| >= M
        let fd_rel = if curve.derivative(s.theta)?.norm() >= curve.term_magnitude(s.theta)? {
            fd_profile.per_sample[i] / length_scale(&fd.samples[i])
        } else {
            0.0
        };
        max_fd_gated = max_fd_gated.max(fd_rel);
        if rel > tol.residual || flow > tol.flow_residual || fd_rel > tol.fd_residual {
            offending.push(i as u64);
        }
    }

    let cusps_expected = analytic.cusps.clone();
    let cusps_found = find_cusps_numeric(params, branch, window)?;

    let mut failures = Vec::new();
    if profile.max_rel_residual > tol.residual {
        failures.push(format!(
            "soliton residual {:e} exceeds {:e}",
            profile.max_rel_residual, tol.residual
        ));
    }
    if max_fd_gated > tol.fd_residual {
        failures.push(format!(
            "finite-difference residual {max_fd_gated:e} exceeds {:e}",
            tol.fd_residual
        ));
    }
    if max_flow > tol.flow_residual {
        failures.push(format!(
            "flow-law residual {max_flow:e} exceeds {:e}",
            tol.flow_residual
        ));
    }
    if !cusps_agree(&cusps_found, &cusps_expected, tol.cusp_match) {
        failures.push(format!(
            "numeric cusps {cusps_found:?} differ from closed form {cusps_expected:?}"
        ));
    }
    offending.truncate(MAX_LISTED);
    Ok(BranchReport {
        branch: Some(branch),
        samples: analytic.len(),
        max_residual: profile.max_abs_residual,
        max_rel_residual: profile.max_rel_residual,
        max_fd_residual: Some(max_fd_gated),
        max_flow_residual: max_flow,
        cusps_found,
        cusps_expected,
        pass: failures.is_empty(),
        failures,
        offending_rows: offending,
    })
}

/// Options for checking a curve file.
pub struct InputOptions {
    pub params: Option<SolitonParams>,
    pub branch: Option<Branch>,
    pub translation: bool,
}

/// Cusps seen in sampled points: places where consecutive chords turn back.
pub fn chord_reversals(thetas: &[f64], points: &[PlanarPoint]) -> Vec<f64> {
    let chords: Vec<PlanarPoint> = points.windows(2).map(|w| w[1] - w[0]).collect();
    let n = chords.len();
    let flagged: Vec<usize> = (0..n.saturating_sub(1))
        .filter(|&i| {
            chords[i].dot(&chords[i + 1]) < 0.0
                || (i + 2 < n && chords[i].dot(&chords[i + 2]) < 0.0)
        })
        .collect();
    let mut out = Vec::new();
    let mut group: Vec<usize> = Vec::new();
    for i in flagged {
        if let Some(&last) = group.last() {
            if i > last + 2 {
                out.push(group_location(thetas, &group));
                group.clear();
            }
        }
        group.push(i);
    }
    if !group.is_empty() {
        out.push(group_location(thetas, &group));
    }
    out
}

fn group_location(thetas: &[f64], group: &[usize]) -> f64 {
    let first = group[0] + 1;
    let last = (group[group.len() - 1] + 1).min(thetas.len() - 1);
    0.5 * (thetas[first] + thetas[last])
}

/// Frame recovered from the stored support components: `x = (tau + i nu) T`.
fn stored_sample(row: &Row, law: SolitonLaw) -> Option<CurveSample> {
    let (k, tau, nu) = (row.k?, row.tau?, row.nu?);
    let x = PlanarPoint::new(row.x, row.y);
    let denom = tau * tau + nu * nu;
    if denom == 0.0 {
        return None;
    }
    // T = x (tau - i nu) / (tau^2 + nu^2)
    let tangent = PlanarPoint::new(
        (row.x * tau + row.y * nu) / denom,
        (row.y * tau - row.x * nu) / denom,
    );
    let normal = tangent.rotate_quarter();
    Some(CurveSample {
        theta: row.theta,
        position: x,
        tangent,
        normal,
        curvature: k,
        tau,
        nu,
        residual: law.residual(tau, nu, normal, k),
    })
}

fn on_grid(theta: f64, window: ThetaWindow, samples: usize) -> bool {
    if samples < 2 {
        return true;
    }
    let step = window.len() / (samples - 1) as f64;
    let j = ((theta - window.min) / step).round();
    j >= 0.0
        && j <= (samples - 1) as f64
        && (theta - (window.min + j * step)).abs() <= 1e-9 * step.max(theta.abs())
}

/// Checks a curve file: stored Frenet data, five-point finite differences of
/// the positions, the flow law, and the cusp list.
pub fn verify_input(
    file: &CurveFile,
    opts: &InputOptions,
    tol: &Tolerances,
) -> Result<BranchReport> {
    let branch = opts.branch.or(file.branch);
    let params = opts.params.or(file.params);
    let law = if opts.translation || branch == Some(Branch::TranslatingCycloid) {
        SolitonLaw::Translation(PlanarPoint::new(0.0, 1.0))
    } else {
        match params {
            Some(p) if p.is_degenerate() => return Err(SolitonError::DegenerateMotion.into()),
            Some(p) => SolitonLaw::Similarity(p),
            None => bail!("no soliton parameters: pass --c and --d or a `# params` comment"),
        }
    };
    let rows = &file.rows;
    if rows.windows(2).any(|w| !(w[0].theta < w[1].theta)) {
        bail!("theta column must be strictly increasing");
    }
    let thetas: Vec<f64> = rows.iter().map(|r| r.theta).collect();
    let points: Vec<PlanarPoint> = rows.iter().map(|r| PlanarPoint::new(r.x, r.y)).collect();

    let mut bad = vec![false; rows.len()];
    let mut max_abs = 0.0f64;
    let mut max_rel = 0.0f64;
    let mut max_flow = 0.0f64;
    let mut max_fd: Option<f64> = None;
    let mut failures = Vec::new();

    let grid = match (file.window, file.samples) {
        (Some(w), Some(n)) => Some((w, n)),
        _ => None,
    };
    for (i, row) in rows.iter().enumerate() {
        if !(row.theta.is_finite() && row.x.is_finite() && row.y.is_finite()) {
            bad[i] = true;
            continue;
        }
        if let Some((w, n)) = grid {
            if !on_grid(row.theta, w, n) {
                bad[i] = true;
            }
        }
        if let Some(s) = stored_sample(row, law) {
            let scale = length_scale(&s);
            let pythagoras = (s.position.norm() - s.tau.hypot(s.nu)).abs();
            let stored_residual = row.residual.map_or(0.0, |r| (r - s.residual).abs());
            let defect = s.residual.abs().max(pythagoras).max(stored_residual);
            max_abs = max_abs.max(defect);
            max_rel = max_rel.max(defect / scale);
            if !(defect / scale <= tol.residual) {
                bad[i] = true;
            }
            let flow = sample_flow_residual(law, &s, tol.flow_dt)? / scale;
            max_flow = max_flow.max(flow);
            if !(flow <= tol.flow_residual) {
                bad[i] = true;
            }
        }
    }

    let known_cusps: Vec<f64> = file.cusps.clone().unwrap_or_default();
    for (i, jet) in stencil_jets(&thetas, &points).into_iter().enumerate() {
        let Some(jet) = jet else { continue };
        if known_cusps
            .iter()
            .any(|c| (c - thetas[i]).abs() < 5.0 * tol.cusp_exclusion)
        {
            continue;
        }
        let scale = jet.position.norm() + jet.acceleration.norm();
        if jet.velocity.norm() < 1e-3 * scale {
            continue;
        }
        let s = match frame_from_jet(thetas[i], jet, law) {
            Ok(s) => s,
            Err(_) => {
                bad[i] = true;
                continue;
            }
        };
        let rel = s.residual.abs() / length_scale(&s);
        max_fd = Some(max_fd.unwrap_or(0.0).max(rel));
        if !(rel <= tol.fd_residual) {
            bad[i] = true;
        }
        if rows[i].k.is_none() {
            let flow = sample_flow_residual(law, &s, tol.flow_dt)? / length_scale(&s);
            max_flow = max_flow.max(flow);
            if !(flow <= tol.flow_residual) {
                bad[i] = true;
            }
        }
    }
    if max_fd.is_none() && rows.iter().all(|r| r.k.is_none()) {
        failures.push(
            "no row could be checked (need stored k,tau,nu or uniformly spaced theta)".to_string(),
        );
    }

    let cusps_found = chord_reversals(&thetas, &points);
    let (lo, hi) = (thetas[0], thetas[thetas.len() - 1]);
    let cusps_expected: Vec<f64> = match (file.cusps.clone(), branch, params) {
        (Some(c), _, _) => c,
        (None, Some(Branch::TranslatingCycloid), _) => imcf_soliton::BranchCurve::new(
            SolitonParams::new(0.0, 0.0),
            Branch::TranslatingCycloid,
        )?
        .cusps_in(ThetaWindow::new(lo, hi)?),
        (None, Some(b), Some(p)) => {
            imcf_soliton::BranchCurve::new(p, b)?.cusps_in(ThetaWindow::new(lo, hi)?)
        }
        _ => cusps_found.clone(),
    };
    let max_gap = thetas.windows(2).map(|w| w[1] - w[0]).fold(0.0, f64::max);
    if !cusps_agree(&cusps_found, &cusps_expected, 2.0 * max_gap) {
        failures.push(format!(
            "cusps seen in the data {cusps_found:?} differ from {cusps_expected:?}"
        ));
    }

    let offending: Vec<u64> = rows
        .iter()
        .zip(&bad)
        .filter(|(_, b)| **b)
        .map(|(r, _)| r.line)
        .collect();
    if !offending.is_empty() {
        failures.push(format!(
            "{} row(s) fail the residual checks",
            offending.len()
        ));
    }
    Ok(BranchReport {
        branch,
        samples: rows.len(),
        max_residual: max_abs,
        max_rel_residual: max_rel,
        max_fd_residual: max_fd,
        max_flow_residual: max_flow,
        cusps_found,
        cusps_expected,
        pass: failures.is_empty(),
        failures,
        offending_rows: offending.into_iter().take(MAX_LISTED).collect(),
    })
}
