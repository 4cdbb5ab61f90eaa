//! The linear system for the support components `(tau, nu)`.
//!
//! After reparametrizing by `sbar = integral ds / (c tau - d nu)` the support
//! components of a soliton satisfy
//!
//! ```text
//! d tau / d sbar = c tau + (1 - d) nu
//! d nu  / d sbar = -tau
//! ```
//!
//! (from `d nu / ds = -k tau`), whose flow lines coincide with those of the arc-length system. In polar
//! form `nu = r cos(phi)`, `tau = r sin(phi)`, the flow lines are given in
//! closed form by `r(phi)`, and the tangent angle along them by
//! `theta_cd(tan phi) = integral dt / (t^2 + c t + 1 - d)`.

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::params::{validate, RegimeKind, SolitonParams};
use crate::scalar::Scalar;

/// Magnitude beyond which trajectories are considered to have blown up.
pub const BLOW_UP: f64 = 1e150;

const POLE_TOL: f64 = 1e-14;

/// A point of the phase plane in Cartesian and polar form.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseState<T> {
    pub tau: T,
    pub nu: T,
    pub r: T,
    pub phi: T,
}

impl<T: Scalar> PhaseState<T> {
    pub fn from_cartesian(tau: T, nu: T) -> Self {
        Self {
            tau,
            nu,
            r: tau.hypot(nu),
            phi: tau.atan2(nu),
        }
    }

    pub fn from_polar(r: T, phi: T) -> Self {
        let (s, c) = phi.sin_cos();
        Self {
            tau: r * s,
            nu: r * c,
            r,
            phi,
        }
    }

    pub fn is_finite(&self) -> bool {
        self.tau.is_finite() && self.nu.is_finite()
    }
}

/// A numerically integrated flow line.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct PhaseTrajectory<T> {
    pub params: SolitonParams<T>,
    pub states: Vec<PhaseState<T>>,
    pub sbar_grid: Vec<T>,
}

/// A ray of the phase plane that is itself a flow line.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct FixedDirection<T> {
    /// Root of `t^2 + c t + (1 - d)`.
    pub tan_phi: T,
    /// `atan(tan_phi)`; the opposite ray `phi + pi` is the same line.
    pub phi: T,
    /// 2 for the double root of the critical regime.
    pub multiplicity: u8,
    /// Growth rate `-tan_phi` of the corresponding spiral `e^{(a+i)theta}`.
    pub spiral_growth: T,
}

/// `(d tau / d sbar, d nu / d sbar)`.
pub fn vector_field<T: Scalar>(params: SolitonParams<T>, state: &PhaseState<T>) -> (T, T) {
    (
        params.c * state.tau + (T::one() - params.d) * state.nu,
        -state.tau,
    )
}

/// Directions `phi_0` with `tan^2 phi_0 + c tan phi_0 + 1 - d = 0`.
pub fn fixed_directions<T: Scalar>(params: SolitonParams<T>) -> Result<Vec<FixedDirection<T>>> {
    let regime = validate(params)?;
    let make = |t: T, multiplicity| FixedDirection {
        tan_phi: t,
        phi: t.atan(),
        multiplicity,
        spiral_growth: -t,
    };
    Ok(match regime.kind {
        RegimeKind::Undercritical => Vec::new(),
        RegimeKind::Critical => vec![make(-params.c / T::lit(2.0), 2)],
        RegimeKind::Overcritical => {
            let (alpha, beta) = regime.rates();
            vec![make(-alpha, 1), make(-beta, 1)]
        }
    })
}

fn quadratic<T: Scalar>(params: SolitonParams<T>, t: T) -> T {
    t * t + params.c * t + (T::one() - params.d)
}

fn is_pole<T: Scalar>(params: SolitonParams<T>, t: T) -> bool {
    let q = quadratic(params, t);
    let scale =
        t * t + (params.c * t).abs() + (T::one() - params.d).abs() + T::min_positive_value();
    q.abs() <= T::lit(POLE_TOL) * scale
}

/// `theta_cd(t) = integral dt / (t^2 + c t + 1 - d)` with the integration
/// constant dropped, in the closed form for the regime.
///
/// In the overcritical regime the inverse hyperbolic tangent is used for
/// `|t + c/2| < K` and the inverse hyperbolic cotangent for `|t + c/2| > K`.
pub fn theta_cd<T: Scalar>(params: SolitonParams<T>, t: T) -> Result<T> {
    if !t.is_finite() {
        return Err(SolitonError::NonFinite("t"));
    }
    let regime = validate(params)?;
    if is_pole(params, t) {
        return Err(SolitonError::Pole { at: t.as_f64() });
    }
    let u = t + params.c / T::lit(2.0);
    let k = regime.k;
    Ok(match regime.kind {
        RegimeKind::Critical => -u.recip(),
        RegimeKind::Undercritical => (u / k).atan() / k,
        RegimeKind::Overcritical => {
            if u.abs() < k {
                -(u / k).atanh() / k
            } else {
                // arcoth(z) = artanh(1/z)
                -(k / u).atanh() / k
            }
        }
    })
}

/// Closed-form flow-line radius
/// `r = |sec phi| / sqrt|(tan phi + c/2)^2 + 1 - d - c^2/4| * exp(c/2 * theta_cd(tan phi))`,
/// normalized to unit constant.
pub fn r_of_phi<T: Scalar>(params: SolitonParams<T>, phi: T) -> Result<T> {
    if !phi.is_finite() {
        return Err(SolitonError::NonFinite("phi"));
    }
    let cos = phi.cos();
    if cos.abs() <= T::lit(POLE_TOL) {
        return Err(SolitonError::Pole { at: phi.as_f64() });
    }
    let t = phi.tan();
    let theta = theta_cd(params, t).map_err(|e| match e {
        SolitonError::Pole { .. } => SolitonError::Pole { at: phi.as_f64() },
        other => other,
    })?;
    let half_c = params.c / T::lit(2.0);
    let radicand = ((t + half_c).powi(2) + (T::one() - params.d - half_c * half_c)).abs();
    let r = (cos.abs() * radicand.sqrt()).recip() * (half_c * theta).exp();
    if r.is_finite() {
        Ok(r)
    } else {
        Err(SolitonError::Pole { at: phi.as_f64() })
    }
}

/// `d log r / d phi = (c tan^2 phi - d tan phi) / (tan^2 phi + c tan phi + 1 - d)`.
pub fn dlog_r_dphi<T: Scalar>(params: SolitonParams<T>, phi: T) -> Result<T> {
    let t = phi.tan();
    if is_pole(params, t) {
        return Err(SolitonError::Pole { at: phi.as_f64() });
    }
    Ok((params.c * t * t - params.d * t) / quadratic(params, t))
}

/// Classical fixed-step RK4 of the linear field over `sbar` from `span.0` to
/// `span.1`, starting at `initial`. Backward spans (`span.0 > span.1`) are
/// integrated in reverse and returned with an increasing grid.
pub fn integrate_trajectory<T: Scalar>(
    params: SolitonParams<T>,
    initial: PhaseState<T>,
    span: (T, T),
    step: T,
) -> Result<PhaseTrajectory<T>> {
    if !(step > T::zero()) || !step.is_finite() {
        return Err(SolitonError::InvalidArgument(format!(
            "step must be positive, got {step}"
        )));
    }
    if !initial.is_finite() || !params.is_finite() {
        return Err(SolitonError::NonFinite("trajectory input"));
    }
    let (start, end) = span;
    if !start.is_finite() || !end.is_finite() || start == end {
        return Err(SolitonError::InvalidArgument(
            "sbar span must be finite and non-empty".into(),
        ));
    }
    let length = (end - start).abs();
    let n = (length / step).ceil().to_usize().unwrap_or(1).max(1);
    let h = (end - start) / T::from_usize(n).unwrap();
    let limit = T::lit(BLOW_UP);

    let mut states = Vec::with_capacity(n + 1);
    let mut grid = Vec::with_capacity(n + 1);
    let mut s = (initial.tau, initial.nu);
    states.push(PhaseState::from_cartesian(s.0, s.1));
    grid.push(start);

    let field = |(tau, nu): (T, T)| (params.c * tau + (T::one() - params.d) * nu, -tau);
    let half = T::lit(0.5);
    let sixth = T::lit(6.0).recip();
    for i in 1..=n {
        let k1 = field(s);
        let k2 = field((s.0 + half * h * k1.0, s.1 + half * h * k1.1));
        let k3 = field((s.0 + half * h * k2.0, s.1 + half * h * k2.1));
        let k4 = field((s.0 + h * k3.0, s.1 + h * k3.1));
        s = (
            s.0 + h * sixth * (k1.0 + T::lit(2.0) * (k2.0 + k3.0) + k4.0),
            s.1 + h * sixth * (k1.1 + T::lit(2.0) * (k2.1 + k3.1) + k4.1),
        );
        if !(s.0.abs() <= limit && s.1.abs() <= limit) {
            return Err(SolitonError::Range {
                theta: (start + h * T::from_usize(i).unwrap()).as_f64(),
            });
        }
        states.push(PhaseState::from_cartesian(s.0, s.1));
        grid.push(if i == n {
            end
        } else {
            start + h * T::from_usize(i).unwrap()
        });
    }
    if end < start {
        states.reverse();
        grid.reverse();
    }
    Ok(PhaseTrajectory {
        params,
        states,
        sbar_grid: grid,
    })
}
