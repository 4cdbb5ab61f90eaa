//! Sampled curve containers and verification tolerances.

use serde::{Deserialize, Serialize};

use crate::branch::Branch;
use crate::error::{Result, SolitonError};
use crate::geometry::PlanarPoint;
use crate::params::{SolitonParams, DEFAULT_DISCRIMINANT_TOL};
use crate::scalar::Scalar;

/// Closed parameter interval `[min, max]` with `min < max`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct ThetaWindow<T> {
    pub min: T,
    pub max: T,
}

impl<T: Scalar> ThetaWindow<T> {
    pub fn new(min: T, max: T) -> Result<Self> {
        if !min.is_finite() || !max.is_finite() {
            return Err(SolitonError::NonFinite("theta window"));
        }
        if min >= max {
            return Err(SolitonError::InvalidArgument(format!(
                "theta window must satisfy min < max, got [{min}, {max}]"
            )));
        }
        Ok(Self { min, max })
    }

    /// Symmetric window `[-half_width, half_width]`.
    pub fn symmetric(half_width: T) -> Result<Self> {
        Self::new(-half_width, half_width)
    }

    /// `[-3 pi, 3 pi]`.
    pub fn default_window() -> Self {
        let w = T::lit(3.0) * T::PI();
        Self { min: -w, max: w }
    }

    pub fn contains(&self, theta: T) -> bool {
        theta >= self.min && theta <= self.max
    }

    pub fn len(&self) -> T {
        self.max - self.min
    }

    /// `n >= 2` equally spaced points including both ends.
    pub fn grid(&self, n: usize) -> Result<Vec<T>> {
        if n < 2 {
            return Err(SolitonError::InvalidArgument(format!(
                "need at least 2 samples, got {n}"
            )));
        }
        let last = T::from_usize(n - 1).unwrap();
        Ok((0..n)
            .map(|i| {
                if i == n - 1 {
                    self.max
                } else {
                    self.min + self.len() * T::from_usize(i).unwrap() / last
                }
            })
            .collect())
    }
}

/// Frenet data and soliton residual at one parameter value.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct CurveSample<T> {
    /// Curve parameter; the tangent direction angle up to a constant.
    pub theta: T,
    pub position: PlanarPoint<T>,
    /// Unit tangent `x' / |x'|`.
    pub tangent: PlanarPoint<T>,
    /// Unit normal, the tangent turned a quarter counter-clockwise.
    pub normal: PlanarPoint<T>,
    /// Signed curvature with respect to `normal`.
    pub curvature: T,
    /// `<x, T>`
    pub tau: T,
    /// `<x, N>`
    pub nu: T,
    /// `c tau - d nu - 1/k`, or `<e2, N> + 1/k` for the translating cycloid.
    pub residual: T,
}

/// A branch evaluated on a parameter grid with cusp neighbourhoods removed.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct SampledCurve<T> {
    pub params: SolitonParams<T>,
    pub branch: Branch,
    pub theta_grid: Vec<T>,
    pub samples: Vec<CurveSample<T>>,
    /// Parameter values of the singular points inside the sampling window.
    pub cusps: Vec<T>,
}

impl<T: Scalar> SampledCurve<T> {
    pub fn len(&self) -> usize {
        self.samples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.samples.is_empty()
    }

    /// Checks ordering, alignment and cusp exclusion.
    pub fn check_invariants(&self, cusp_exclusion: T) -> Result<()> {
        if self.theta_grid.len() != self.samples.len() {
            return Err(SolitonError::InvalidArgument(
                "theta grid and samples differ in length".into(),
            ));
        }
        if self.theta_grid.windows(2).any(|w| w[0] >= w[1]) {
            return Err(SolitonError::InvalidArgument(
                "theta grid is not strictly increasing".into(),
            ));
        }
        for (theta, sample) in self.theta_grid.iter().zip(&self.samples) {
            if *theta != sample.theta {
                return Err(SolitonError::InvalidArgument(
                    "sample misaligned with theta grid".into(),
                ));
            }
            if self
                .cusps
                .iter()
                .any(|c| (*theta - *c).abs() < cusp_exclusion)
            {
                return Err(SolitonError::InvalidArgument(format!(
                    "sample at theta = {theta} lies inside a cusp neighbourhood"
                )));
            }
        }
        Ok(())
    }
}

/// Numerical thresholds used by sampling and verification.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Tolerances<T> {
    /// Absolute band on `c^2 - 4(1-d)` treated as critical.
    pub discriminant: T,
    /// Samples closer than this (in theta) to a cusp are dropped.
    pub cusp_exclusion: T,
    /// Central-difference step in theta.
    pub fd_step: T,
    /// Bound on the soliton residual with analytic derivatives.
    pub residual: T,
    /// Bound on the soliton residual with finite-difference derivatives.
    pub fd_residual: T,
    /// Time step for the flow-law central difference.
    pub flow_dt: T,
    /// Bound on `|<d_t x, N> + 1/k|`.
    pub flow_residual: T,
    /// Agreement between numeric and closed-form cusp locations.
    pub cusp_match: T,
}

impl<T: Scalar> Default for Tolerances<T> {
    fn default() -> Self {
        Self {
            discriminant: T::lit(DEFAULT_DISCRIMINANT_TOL),
            cusp_exclusion: T::lit(1e-2),
            fd_step: T::lit(1e-5),
            residual: T::lit(1e-8),
            fd_residual: T::lit(1e-5),
            flow_dt: T::lit(1e-5),
            flow_residual: T::lit(1e-7),
            cusp_match: T::lit(1e-8),
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn grid_hits_both_ends() {
        let w = ThetaWindow::new(-1.0, 2.0).unwrap();
        let g = w.grid(4).unwrap();
        assert_eq!(g, vec![-1.0, 0.0, 1.0, 2.0]);
        assert!(w.grid(1).is_err());
    }

    #[test]
    fn window_rejects_bad_bounds() {
        assert!(ThetaWindow::new(1.0, 1.0).is_err());
        assert!(ThetaWindow::new(f64::NAN, 1.0).is_err());
    }
}
