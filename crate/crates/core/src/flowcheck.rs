//! Checks that the self-similar motion of a soliton really solves inverse mean
//! curvature flow, `<d_t x, N> = -1/k`.
//!
//! A curve satisfying `c tau - d nu = 1/k` moves by `x -> e^{(d - ci)t} x`:
//! it expands at rate `d` and turns clockwise at rate `c` (with `N = iT`).

use num_complex::Complex;

use crate::branch::Branch;
use crate::curve::CurveSample;
use crate::diffgeo::{frenet_on_curve, DerivativeMode, SolitonLaw};
use crate::error::{Result, SolitonError};
use crate::generators::BranchCurve;
use crate::geometry::PlanarPoint;
use crate::params::SolitonParams;
use crate::scalar::Scalar;

/// Complex rate `d - ci` of the similarity motion.
pub fn motion_rate<T: Scalar>(params: SolitonParams<T>) -> Complex<T> {
    Complex::new(params.d, -params.c)
}

/// Position of `point` after flowing for time `t`: `e^{(d - ci)t} point`.
pub fn evolve<T: Scalar>(
    params: SolitonParams<T>,
    point: PlanarPoint<T>,
    t: T,
) -> Result<PlanarPoint<T>> {
    if !params.is_finite() || !point.is_finite() || !t.is_finite() {
        return Err(SolitonError::NonFinite("evolve input"));
    }
    let z = motion_rate(params) * t;
    if z.re > T::max_exponent() {
        return Err(SolitonError::Range { theta: t.as_f64() });
    }
    let out: PlanarPoint<T> = (z.exp() * point.to_complex()).into();
    if out.is_finite() {
        Ok(out)
    } else {
        Err(SolitonError::Range { theta: t.as_f64() })
    }
}

/// Position under the motion `e^{(d-ci)t} x + v (e^{(d-ci)t} - 1) / (d - ci)`:
/// rotation and scaling about the point `-v / (d - ci)`, with initial
/// translation velocity `v`.
pub fn evolve_with_translation<T: Scalar>(
    params: SolitonParams<T>,
    velocity: PlanarPoint<T>,
    point: PlanarPoint<T>,
    t: T,
) -> Result<PlanarPoint<T>> {
    if params.is_degenerate() {
        return Err(SolitonError::DegenerateMotion);
    }
    let rate = motion_rate(params);
    let moved = evolve(params, point, t)?;
    let factor = evolve(params, PlanarPoint::new(T::one(), T::zero()), t)?.to_complex();
    let shift = velocity.to_complex() * (factor - T::one()) / rate;
    Ok(moved + shift.into())
}

/// `d_t x` at `t = 0` by central difference of `motion` with step `dt`.
pub fn central_velocity<T, F>(motion: F, dt: T) -> Result<PlanarPoint<T>>
where
    T: Scalar,
    F: Fn(T) -> Result<PlanarPoint<T>>,
{
    if !(dt > T::zero()) {
        return Err(SolitonError::InvalidArgument(format!(
            "dt must be positive, got {dt}"
        )));
    }
    let forward = motion(dt)?;
    let backward = motion(-dt)?;
    Ok((forward - backward).scale((T::lit(2.0) * dt).recip()))
}

/// `|<d_t x, N> + 1/k|` at one sample, with `d_t x` from the motion of `law`.
pub fn sample_flow_residual<T: Scalar>(
    law: SolitonLaw<T>,
    sample: &CurveSample<T>,
    dt: T,
) -> Result<T> {
    let x = sample.position;
    let velocity = match law {
        SolitonLaw::Similarity(params) => central_velocity(|t| evolve(params, x, t), dt)?,
        SolitonLaw::Translation(v) => central_velocity(|t| Ok(x + v.scale(t)), dt)?,
    };
    Ok((velocity.dot(&sample.normal) + sample.curvature.recip()).abs())
}

/// Normal-speed residual of `branch` at `theta`; the translating cycloid is
/// checked against upward translation instead.
pub fn imcf_normal_speed_residual<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    theta: T,
    dt: T,
) -> Result<T> {
    let curve = BranchCurve::new(params, branch)?;
    let sample = frenet_on_curve(&curve, theta, DerivativeMode::Analytic)?;
    sample_flow_residual(SolitonLaw::for_branch(params, branch), &sample, dt)
}
