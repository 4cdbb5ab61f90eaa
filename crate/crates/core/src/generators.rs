//! Closed-form parametrizations `x(theta)` of every solution branch.
//!
//! All curves are emitted in normal form: integration constants (an overall
//! rotation and scaling) are dropped. Except for the translating cycloid, the
//! parameter `theta` is the direction of the tangent up to a constant.

use num_complex::Complex;

use crate::branch::{check_admissible, Branch};
use crate::curve::ThetaWindow;
use crate::error::{Result, SolitonError};
use crate::geometry::PlanarPoint;
use crate::params::{validate, Regime, RegimeKind, SolitonParams, DEFAULT_DISCRIMINANT_TOL};
use crate::scalar::Scalar;

/// One summand `coefficient * theta^power * e^{exponent * theta}`.
///
/// Spiral terms have exponent `a + i`; the undercritical curve also needs
/// angular speeds `1 +- K`.
#[derive(Clone, Copy, Debug, PartialEq)]
pub struct SpiralTerm<T> {
    pub coefficient: Complex<T>,
    pub exponent: Complex<T>,
    pub theta_power: u8,
}

impl<T: Scalar> SpiralTerm<T> {
    fn new(coefficient: Complex<T>, exponent: Complex<T>, theta_power: u8) -> Self {
        Self {
            coefficient,
            exponent,
            theta_power,
        }
    }

    fn exp(&self, theta: T) -> Result<Complex<T>> {
        checked_exp(self.exponent * theta, theta)
    }

    fn value(&self, theta: T) -> Result<Complex<T>> {
        let e = self.exp(theta)?;
        Ok(self.coefficient * theta.powi(self.theta_power as i32) * e)
    }

    /// Value at `theta + offset` with `e^{g theta}` computed once, so stencil
    /// points around `theta` share the rounding of the large exponent.
    fn value_offset(&self, theta: T, offset: T) -> Result<Complex<T>> {
        let e = self.exp(theta)? * (self.exponent * offset).exp();
        Ok(self.coefficient * (theta + offset).powi(self.theta_power as i32) * e)
    }

    fn second_derivative(&self, theta: T) -> Result<Complex<T>> {
        let e = self.exp(theta)?;
        let g = self.exponent;
        let m = T::from_u8(self.theta_power).unwrap();
        let poly = match self.theta_power {
            0 => g * g,
            1 => g * T::lit(2.0) + g * g * theta,
            _ => {
                g * g * theta.powi(self.theta_power as i32)
                    + g * (T::lit(2.0) * m * theta.powi(self.theta_power as i32 - 1))
                    + Complex::from(m * (m - T::one()) * theta.powi(self.theta_power as i32 - 2))
            }
        };
        Ok(self.coefficient * poly * e)
    }
}

fn checked_exp<T: Scalar>(z: Complex<T>, theta: T) -> Result<Complex<T>> {
    if z.re > T::max_exponent() {
        return Err(SolitonError::Range {
            theta: theta.as_f64(),
        });
    }
    Ok(z.exp())
}

fn finite<T: Scalar>(z: Complex<T>, theta: T) -> Result<PlanarPoint<T>> {
    if z.re.is_finite() && z.im.is_finite() {
        Ok(z.into())
    } else {
        Err(SolitonError::Range {
            theta: theta.as_f64(),
        })
    }
}

/// A branch bound to its parameters with constants precomputed.
#[derive(Clone, Debug, PartialEq)]
pub struct BranchCurve<T> {
    params: SolitonParams<T>,
    branch: Branch,
    regime: Option<Regime<T>>,
    terms: Vec<SpiralTerm<T>>,
}

impl<T: Scalar> BranchCurve<T> {
    pub fn new(params: SolitonParams<T>, branch: Branch) -> Result<Self> {
        Self::with_tolerance(params, branch, T::lit(DEFAULT_DISCRIMINANT_TOL))
    }

    pub fn with_tolerance(params: SolitonParams<T>, branch: Branch, disc_tol: T) -> Result<Self> {
        let regime = check_admissible(params, branch, disc_tol)?;
        let i = Complex::<T>::i();
        let half_c = params.c / T::lit(2.0);
        let one = Complex::from(T::one());
        let unit = |a: T| Complex::new(a, T::one());

        let terms = match branch {
            Branch::SpiralAlpha => {
                let (alpha, _) = regime.unwrap().rates();
                vec![SpiralTerm::new(one, unit(alpha), 0)]
            }
            Branch::SpiralBeta => {
                let (_, beta) = regime.unwrap().rates();
                vec![SpiralTerm::new(one, unit(beta), 0)]
            }
            Branch::CriticalSpiral => vec![SpiralTerm::new(one, unit(half_c), 0)],
            Branch::CriticalGeneral => vec![
                SpiralTerm::new(Complex::new(-half_c, T::one()), unit(half_c), 1),
                SpiralTerm::new(-one, unit(half_c), 0),
            ],
            Branch::OvercriticalPlus | Branch::OvercriticalMinus => {
                let (alpha, beta) = regime.unwrap().rates();
                let sign = if branch == Branch::OvercriticalPlus {
                    T::one()
                } else {
                    -T::one()
                };
                vec![
                    SpiralTerm::new(i - alpha, unit(alpha), 0),
                    SpiralTerm::new((i - beta) * sign, unit(beta), 0),
                ]
            }
            Branch::UndercriticalGeneral => {
                let k = regime.unwrap().k;
                vec![
                    SpiralTerm::new(
                        Complex::new(-half_c, T::one() - k),
                        Complex::new(half_c, k + T::one()),
                        0,
                    ),
                    SpiralTerm::new(
                        Complex::new(-half_c, T::one() + k),
                        Complex::new(half_c, T::one() - k),
                        0,
                    ),
                ]
            }
            Branch::TranslatingCycloid => Vec::new(),
        };
        Ok(Self {
            params,
            branch,
            regime,
            terms,
        })
    }

    pub fn params(&self) -> SolitonParams<T> {
        self.params
    }

    pub fn branch(&self) -> Branch {
        self.branch
    }

    /// `None` for the translating cycloid.
    pub fn regime(&self) -> Option<Regime<T>> {
        self.regime
    }

    /// Exponential summands of the closed form (empty for the cycloid).
    pub fn terms(&self) -> &[SpiralTerm<T>] {
        &self.terms
    }

    /// Largest `|Re|` among the term exponents.
    pub fn max_growth(&self) -> T {
        self.terms
            .iter()
            .map(|t| t.exponent.re.abs())
            .fold(T::zero(), T::max)
    }

    /// Largest `|exponent|` among the terms; sets the oscillation scale.
    pub fn max_frequency(&self) -> T {
        self.terms
            .iter()
            .map(|t| t.exponent.norm())
            .fold(T::one(), T::max)
    }

    pub fn eval(&self, theta: T) -> Result<PlanarPoint<T>> {
        check_theta(theta)?;
        if self.branch == Branch::TranslatingCycloid {
            let q = T::lit(0.25);
            return Ok(PlanarPoint::new(
                q * (theta - theta.sin()),
                q * (T::one() - theta.cos()),
            ));
        }
        let mut z = Complex::new(T::zero(), T::zero());
        for term in &self.terms {
            z = z + term.value(theta)?;
        }
        finite(z, theta)
    }

    /// Sum of the moduli of the terms at `theta`. Rounding in `eval` scales
    /// with this rather than with `|x|` when the terms cancel.
    pub fn term_magnitude(&self, theta: T) -> Result<T> {
        check_theta(theta)?;
        if self.branch == Branch::TranslatingCycloid {
            return Ok(T::lit(0.25) * (theta.abs() + T::lit(2.0)));
        }
        let mut m = T::zero();
        for term in &self.terms {
            m = m + term.value(theta)?.norm();
        }
        Ok(m)
    }

    /// `x(theta + offset)` for small offsets, as used by finite differences.
    pub fn eval_offset(&self, theta: T, offset: T) -> Result<PlanarPoint<T>> {
        check_theta(theta)?;
        if self.branch == Branch::TranslatingCycloid {
            return self.eval(theta + offset);
        }
        let mut z = Complex::new(T::zero(), T::zero());
        for term in &self.terms {
            z = z + term.value_offset(theta, offset)?;
        }
        finite(z, theta)
    }

    /// `dx/dtheta` from the factorized closed forms.
    pub fn derivative(&self, theta: T) -> Result<PlanarPoint<T>> {
        check_theta(theta)?;
        let c = self.params.c;
        let half_c = c / T::lit(2.0);
        let rotation = Complex::new(theta.cos(), theta.sin());
        let z = match self.branch {
            Branch::SpiralAlpha | Branch::SpiralBeta | Branch::CriticalSpiral => {
                let g = self.terms[0].exponent;
                g * self.terms[0].exp(theta)?
            }
            Branch::CriticalGeneral => {
                // -(c + (1 + c^2/4) theta) e^{(c/2 + i) theta}
                let factor = c + (T::one() + half_c * half_c) * theta;
                self.terms[1].exp(theta)? * (-factor)
            }
            Branch::OvercriticalPlus | Branch::OvercriticalMinus => {
                // -(e^{alpha theta}(1 + alpha^2) +- e^{beta theta}(1 + beta^2)) e^{i theta}
                let (alpha, beta) = self.regime.unwrap().rates();
                let ea = checked_exp(Complex::from(alpha * theta), theta)?.re;
                let eb = checked_exp(Complex::from(beta * theta), theta)?.re;
                let a = ea * (T::one() + alpha * alpha);
                let b = eb * (T::one() + beta * beta);
                let magnitude = if self.branch == Branch::OvercriticalPlus {
                    a + b
                } else {
                    a - b
                };
                rotation * (-magnitude)
            }
            Branch::UndercriticalGeneral => {
                // -((1 + g1^2) e^{g1 theta} + (1 + g2^2) e^{g2 theta}) e^{i theta},
                // g1 = c/2 + iK, g2 = c/2 - iK
                let k = self.regime.unwrap().k;
                let one = Complex::from(T::one());
                let g1 = Complex::new(half_c, k);
                let g2 = g1.conj();
                let s = (one + g1 * g1) * checked_exp(g1 * theta, theta)?
                    + (one + g2 * g2) * checked_exp(g2 * theta, theta)?;
                -(s * rotation)
            }
            Branch::TranslatingCycloid => {
                let q = T::lit(0.25);
                Complex::new(q * (T::one() - theta.cos()), q * theta.sin())
            }
        };
        finite(z, theta)
    }

    /// `d^2x/dtheta^2`, differentiating the summands term by term.
    pub fn second_derivative(&self, theta: T) -> Result<PlanarPoint<T>> {
        check_theta(theta)?;
        if self.branch == Branch::TranslatingCycloid {
            let q = T::lit(0.25);
            return Ok(PlanarPoint::new(q * theta.sin(), q * theta.cos()));
        }
        let mut z = Complex::new(T::zero(), T::zero());
        for term in &self.terms {
            z = z + term.second_derivative(theta)?;
        }
        finite(z, theta)
    }

    /// Closed-form singular points inside `window`, sorted.
    pub fn cusps_in(&self, window: ThetaWindow<T>) -> Vec<T> {
        let two = T::lit(2.0);
        let mut out = Vec::new();
        match self.branch {
            Branch::CriticalGeneral => {
                let c = self.params.c;
                out.push(-T::lit(4.0) * c / (T::lit(4.0) + c * c));
            }
            Branch::OvercriticalMinus => {
                let (alpha, beta) = self.regime.unwrap().rates();
                let ratio = (T::one() + beta * beta) / (T::one() + alpha * alpha);
                out.push(ratio.ln() / (alpha - beta));
            }
            Branch::UndercriticalGeneral => {
                // zeros of Re((1 + g1^2) e^{iK theta}), spaced pi/K
                let k = self.regime.unwrap().k;
                let g1 = Complex::new(self.params.c / two, k);
                let w = Complex::from(T::one()) + g1 * g1;
                let offset = T::FRAC_PI_2() - w.arg();
                let spacing = T::PI() / k;
                out.extend(progression(offset / k, spacing, window));
            }
            Branch::TranslatingCycloid => {
                out.extend(progression(T::zero(), two * T::PI(), window));
            }
            _ => {}
        }
        out.retain(|t| window.contains(*t));
        out
    }
}

/// Points `start + n * spacing` inside the window.
fn progression<T: Scalar>(start: T, spacing: T, window: ThetaWindow<T>) -> Vec<T> {
    let first = ((window.min - start) / spacing).ceil();
    let last = ((window.max - start) / spacing).floor();
    let mut out = Vec::new();
    let mut n = first;
    while n <= last {
        out.push(start + n * spacing);
        n = n + T::one();
    }
    out
}

fn check_theta<T: Scalar>(theta: T) -> Result<()> {
    if theta.is_finite() {
        Ok(())
    } else {
        Err(SolitonError::NonFinite("theta"))
    }
}

pub fn eval_branch<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    theta: T,
) -> Result<PlanarPoint<T>> {
    BranchCurve::new(params, branch)?.eval(theta)
}

pub fn eval_branch_derivative<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    theta: T,
) -> Result<PlanarPoint<T>> {
    BranchCurve::new(params, branch)?.derivative(theta)
}

/// Closed-form cusp locations of `branch` inside `window`; empty for smooth branches.
pub fn cusp_locations_closed_form<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    window: ThetaWindow<T>,
) -> Result<Vec<T>> {
    Ok(BranchCurve::new(params, branch)?.cusps_in(window))
}

/// Offset `T'(0) / (d - ci)` moving the origin to the centre of a motion
/// that combines translation with rotation or scaling.
///
/// If `x` solves the flow by `e^{(d-ci)t} x + T(t)`, then `x + offset` solves
/// it by rotation and scaling alone.
pub fn recenter_offset<T: Scalar>(
    params: SolitonParams<T>,
    translation_velocity: PlanarPoint<T>,
) -> Result<PlanarPoint<T>> {
    if !params.is_finite() {
        return Err(SolitonError::NonFinite("soliton parameters"));
    }
    if !translation_velocity.is_finite() {
        return Err(SolitonError::NonFinite("translation velocity"));
    }
    if params.is_degenerate() {
        return Err(SolitonError::DegenerateMotion);
    }
    let rate = Complex::new(params.d, -params.c);
    Ok((translation_velocity.to_complex() / rate).into())
}

/// Complete `c = 0` expander written in real coordinates,
/// `(-a sinh(a t) cos t - cosh(a t) sin t, -a sinh(a t) sin t + cosh(a t) cos t)`
/// with `a = sqrt(d - 1)`. Kept as an independent cross-check of the
/// overcritical plus branch.
pub fn dlw_complete_crosscheck<T: Scalar>(d: T, theta: T) -> Result<PlanarPoint<T>> {
    if !d.is_finite() || !theta.is_finite() {
        return Err(SolitonError::NonFinite("cross-check input"));
    }
    if d <= T::one() {
        return Err(SolitonError::InvalidArgument(format!(
            "cross-check formula needs d > 1, got {d}"
        )));
    }
    let a = (d - T::one()).sqrt();
    if (a * theta).abs() > T::max_exponent() {
        return Err(SolitonError::Range {
            theta: theta.as_f64(),
        });
    }
    let (sh, ch) = ((a * theta).sinh(), (a * theta).cosh());
    let (s, c) = theta.sin_cos();
    Ok(PlanarPoint::new(-a * sh * c - ch * s, -a * sh * s + ch * c))
}

/// Growth rate of a spiral branch (`alpha`, `beta` or `c/2`).
pub fn spiral_growth<T: Scalar>(params: SolitonParams<T>, branch: Branch) -> Result<T> {
    let regime = validate(params)?;
    match (branch, regime.kind) {
        (Branch::SpiralAlpha, RegimeKind::Overcritical) => Ok(regime.rates().0),
        (Branch::SpiralBeta, RegimeKind::Overcritical) => Ok(regime.rates().1),
        (Branch::CriticalSpiral, RegimeKind::Critical) => Ok(params.c / T::lit(2.0)),
        _ => Err(SolitonError::InvalidArgument(format!(
            "{branch} is not a spiral branch of the {} regime",
            regime.kind
        ))),
    }
}
