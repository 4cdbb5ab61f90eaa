//! Frenet data, support components and soliton residuals computed from curve
//! evaluations.
//!
//! Nothing here depends on how a branch is built: the analytic mode asks the
//! curve for `x, x', x''`, the finite-difference mode only for `x`. Curvature
//! is taken directly in the `theta` parametrization,
//! `k = Im(conj(x') x'') / |x'|^3`, which does not depend on the speed.

use serde::{Deserialize, Serialize};

use crate::branch::Branch;
use crate::curve::{CurveSample, SampledCurve, ThetaWindow, Tolerances};
use crate::error::{Result, SolitonError};
use crate::generators::BranchCurve;
use crate::geometry::PlanarPoint;
use crate::params::SolitonParams;
use crate::scalar::Scalar;

/// How `x'` and `x''` are obtained.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum DerivativeMode<T> {
    Analytic,
    /// Central differences with the given step.
    FiniteDifference {
        step: T,
    },
}

/// The pointwise identity a soliton satisfies.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub enum SolitonLaw<T> {
    /// `c tau - d nu = 1/k`.
    Similarity(SolitonParams<T>),
    /// `<v, N> = -1/k` for a curve translating with velocity `v`.
    Translation(PlanarPoint<T>),
}

impl<T: Scalar> SolitonLaw<T> {
    /// The law a branch is expected to satisfy; the cycloid translates upward.
    pub fn for_branch(params: SolitonParams<T>, branch: Branch) -> Self {
        match branch {
            Branch::TranslatingCycloid => {
                SolitonLaw::Translation(PlanarPoint::new(T::zero(), T::one()))
            }
            _ => SolitonLaw::Similarity(params),
        }
    }

    /// Signed residual of the law at a point with the given frame data.
    pub fn residual(&self, tau: T, nu: T, normal: PlanarPoint<T>, curvature: T) -> T {
        let inv_k = curvature.recip();
        match *self {
            SolitonLaw::Similarity(p) => p.c * tau - p.d * nu - inv_k,
            SolitonLaw::Translation(v) => v.dot(&normal) + inv_k,
        }
    }
}

/// Position with its first two parameter derivatives.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct Jet<T> {
    pub position: PlanarPoint<T>,
    pub velocity: PlanarPoint<T>,
    pub acceleration: PlanarPoint<T>,
}

impl<T: Scalar> Jet<T> {
    /// The jet of `scale * e^{i rotation} * x`.
    pub fn similarity(&self, scale: T, rotation: T) -> Self {
        Self {
            position: self.position.similarity(scale, rotation),
            velocity: self.velocity.similarity(scale, rotation),
            acceleration: self.acceleration.similarity(scale, rotation),
        }
    }
}

fn speed_floor<T: Scalar>() -> T {
    T::epsilon() * T::lit(1e3)
}

/// Builds the Frenet sample from a jet.
pub fn frame_from_jet<T: Scalar>(
    theta: T,
    jet: Jet<T>,
    law: SolitonLaw<T>,
) -> Result<CurveSample<T>> {
    let Jet {
        position: x,
        velocity: v,
        acceleration: a,
    } = jet;
    if !(x.is_finite() && v.is_finite() && a.is_finite()) {
        return Err(SolitonError::Range {
            theta: theta.as_f64(),
        });
    }
    let speed = v.norm();
    let scale = x.norm() + a.norm();
    if speed == T::zero() || speed <= speed_floor::<T>() * scale {
        return Err(SolitonError::NearCusp {
            theta: theta.as_f64(),
            speed: speed.as_f64(),
        });
    }
    let tangent = v.scale(speed.recip());
    let normal = tangent.rotate_quarter();
    let curvature = v.cross(&a) / (speed * speed * speed);
    if curvature == T::zero() || !curvature.recip().is_finite() {
        return Err(SolitonError::FlatCurvature {
            theta: theta.as_f64(),
        });
    }
    let tau = x.dot(&tangent);
    let nu = x.dot(&normal);
    let residual = law.residual(tau, nu, normal, curvature);
    Ok(CurveSample {
        theta,
        position: x,
        tangent,
        normal,
        curvature,
        tau,
        nu,
        residual,
    })
}

/// Central-difference jet of an arbitrary parametrized curve.
pub fn fd_jet<T, F>(curve: F, theta: T, step: T) -> Result<Jet<T>>
where
    T: Scalar,
    F: Fn(T) -> Result<PlanarPoint<T>>,
{
    if !(step > T::zero()) {
        return Err(SolitonError::InvalidArgument(format!(
            "finite-difference step must be positive, got {step}"
        )));
    }
    stencil(
        curve(theta)?,
        curve(theta + step)?,
        curve(theta - step)?,
        step,
    )
}

fn stencil<T: Scalar>(
    x: PlanarPoint<T>,
    xp: PlanarPoint<T>,
    xm: PlanarPoint<T>,
    step: T,
) -> Result<Jet<T>> {
    let two = T::lit(2.0);
    Ok(Jet {
        position: x,
        velocity: (xp - xm).scale((two * step).recip()),
        acceleration: (xp - x.scale(two) + xm).scale((step * step).recip()),
    })
}

/// Jet of a prepared branch in the requested mode.
pub fn branch_jet<T: Scalar>(
    curve: &BranchCurve<T>,
    theta: T,
    mode: DerivativeMode<T>,
) -> Result<Jet<T>> {
    match mode {
        DerivativeMode::Analytic => Ok(Jet {
            position: curve.eval(theta)?,
            velocity: curve.derivative(theta)?,
            acceleration: curve.second_derivative(theta)?,
        }),
        DerivativeMode::FiniteDifference { step } => {
            if !(step > T::zero()) {
                return fd_jet(|t| curve.eval(t), theta, step);
            }
            let at = |offset: T| curve.eval_offset(theta, offset);
            stencil(at(T::zero())?, at(step)?, at(-step)?, step)
        }
    }
}

pub fn frenet_on_curve<T: Scalar>(
    curve: &BranchCurve<T>,
    theta: T,
    mode: DerivativeMode<T>,
) -> Result<CurveSample<T>> {
    let jet = branch_jet(curve, theta, mode)?;
    frame_from_jet(
        theta,
        jet,
        SolitonLaw::for_branch(curve.params(), curve.branch()),
    )
}

/// Frenet frame, curvature, support components and residual of a branch at `theta`.
pub fn frenet_at<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    theta: T,
    mode: DerivativeMode<T>,
) -> Result<CurveSample<T>> {
    frenet_on_curve(&BranchCurve::new(params, branch)?, theta, mode)
}

/// Samples `branch` on `samples` equally spaced points of `window`, dropping
/// points within `tol.cusp_exclusion` of a closed-form cusp.
pub fn sample_curve<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    window: ThetaWindow<T>,
    samples: usize,
    tol: &Tolerances<T>,
    mode: DerivativeMode<T>,
) -> Result<SampledCurve<T>> {
    let curve = BranchCurve::with_tolerance(params, branch, tol.discriminant)?;
    let cusps = curve.cusps_in(window);
    let mut theta_grid = Vec::with_capacity(samples);
    let mut out = Vec::with_capacity(samples);
    for theta in window.grid(samples)? {
        if cusps
            .iter()
            .any(|c| (theta - *c).abs() < tol.cusp_exclusion)
        {
            continue;
        }
        out.push(frenet_on_curve(&curve, theta, mode)?);
        theta_grid.push(theta);
    }
    Ok(SampledCurve {
        params,
        branch,
        theta_grid,
        samples: out,
        cusps,
    })
}

/// Per-sample defects of a sampled curve.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ResidualProfile<T> {
    pub max_abs_residual: T,
    /// Largest defect divided by the local length scale `|x| + |1/k|`.
    pub max_rel_residual: T,
    pub worst_index: usize,
    pub per_sample: Vec<T>,
}

/// Re-derives `tau`, `nu` and the soliton residual from each sample's position,
/// frame and curvature, and compares them with the stored values.
///
/// A sample's defect is the larger of the recomputed soliton residual and the
/// disagreement with the stored data, so corrupting any field shows up.
pub fn residual_profile<T: Scalar>(curve: &SampledCurve<T>) -> Result<ResidualProfile<T>> {
    if curve.samples.is_empty() {
        return Err(SolitonError::EmptyCurve);
    }
    let law = SolitonLaw::for_branch(curve.params, curve.branch);
    let mut per_sample = Vec::with_capacity(curve.samples.len());
    let mut max_abs = T::zero();
    let mut max_rel = T::zero();
    let mut worst = 0;
    for (idx, s) in curve.samples.iter().enumerate() {
        let tau = s.position.dot(&s.tangent);
        let nu = s.position.dot(&s.normal);
        let soliton = law.residual(tau, nu, s.normal, s.curvature);
        let length = s.position.norm() + s.curvature.recip().abs();
        let frame = (s.tangent.norm() - T::one())
            .abs()
            .max((s.normal - s.tangent.rotate_quarter()).norm());
        let defect = [
            soliton.abs(),
            (tau - s.tau).abs(),
            (nu - s.nu).abs(),
            (soliton - s.residual).abs(),
            frame * length,
        ]
        .into_iter()
        .fold(T::zero(), |acc, v| {
            if v.is_nan() {
                T::infinity()
            } else {
                acc.max(v)
            }
        });
        let rel = defect / length;
        if defect > max_abs || idx == 0 {
            worst = idx;
        }
        max_abs = max_abs.max(defect);
        max_rel = max_rel.max(if rel.is_nan() { T::infinity() } else { rel });
        per_sample.push(defect);
    }
    Ok(ResidualProfile {
        max_abs_residual: max_abs,
        max_rel_residual: max_rel,
        worst_index: worst,
        per_sample,
    })
}

/// Locates singular points as minima of `|x'|^2` that drop to zero.
///
/// The window is scanned for sign changes of `d|x'|^2/dtheta`, each bracket is
/// refined by bisection, and a minimum is accepted when
/// `|x'|^2 <= 1e-10 (|x| + |x''|)^2` there.
pub fn find_cusps_numeric<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    window: ThetaWindow<T>,
) -> Result<Vec<T>> {
    let curve = BranchCurve::new(params, branch)?;
    let slope = |t: T| -> Result<T> { Ok(curve.derivative(t)?.dot(&curve.second_derivative(t)?)) };
    let step = (window.len() / T::lit(4096.0)).min(T::lit(0.05) / curve.max_frequency());
    let n = (window.len() / step)
        .ceil()
        .to_usize()
        .unwrap_or(4096)
        .max(2);
    let grid = window.grid(n + 1)?;
    let threshold = T::lit(1e-10);

    let mut found = Vec::new();
    let mut prev_t = grid[0];
    let mut prev_g = slope(prev_t)?;
    for &t in &grid[1..] {
        let g = slope(t)?;
        if prev_g < T::zero() && g >= T::zero() {
            let root = bisect(&slope, prev_t, t)?;
            let v = curve.derivative(root)?;
            let scale = curve.eval(root)?.norm() + curve.second_derivative(root)?.norm();
            if v.norm_sqr() <= threshold * scale * scale {
                found.push(root);
            }
        }
        prev_t = t;
        prev_g = g;
    }
    Ok(found)
}

fn bisect<T, F>(f: &F, mut lo: T, mut hi: T) -> Result<T>
where
    T: Scalar,
    F: Fn(T) -> Result<T>,
{
    let half = T::lit(0.5);
    for _ in 0..200 {
        let mid = lo + (hi - lo) * half;
        if mid <= lo || mid >= hi {
            break;
        }
        if f(mid)? < T::zero() {
            lo = mid;
        } else {
            hi = mid;
        }
    }
    Ok(lo + (hi - lo) * half)
}

/// Five-point finite-difference jets of a sampled point sequence.
///
/// Only rows whose four neighbouring gaps are equal (to `1e-6` relative) get a
/// jet; rows at the ends or next to an excluded stretch yield `None`.
pub fn stencil_jets<T: Scalar>(thetas: &[T], positions: &[PlanarPoint<T>]) -> Vec<Option<Jet<T>>> {
    let n = thetas.len().min(positions.len());
    let mut out = vec![None; n];
    if n < 5 {
        return out;
    }
    let twelve = T::lit(12.0);
    for i in 2..n - 2 {
        let h = thetas[i + 1] - thetas[i];
        if !(h > T::zero()) {
            continue;
        }
        let uniform = (i - 2..i + 2).all(|j| {
            let gap = thetas[j + 1] - thetas[j];
            (gap - h).abs() <= T::lit(1e-6) * h
        });
        if !uniform {
            continue;
        }
        let [m2, m1, p0, p1, p2] = [
            positions[i - 2],
            positions[i - 1],
            positions[i],
            positions[i + 1],
            positions[i + 2],
        ];
        let velocity = (m2 - p2 + (p1 - m1).scale(T::lit(8.0))).scale((twelve * h).recip());
        let acceleration = ((p1 + m1).scale(T::lit(16.0)) - (p2 + m2) - p0.scale(T::lit(30.0)))
            .scale((twelve * h * h).recip());
        out[i] = Some(Jet {
            position: p0,
            velocity,
            acceleration,
        });
    }
    out
}
