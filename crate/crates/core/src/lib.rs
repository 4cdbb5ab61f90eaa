//! Plane curves that move under inverse mean curvature flow by rotation and scaling.
//!
//! A curve `x` whose flow is a rotation plus scaling satisfies
//! `c <x,T> - d <x,N> = 1/k` for a rotation speed `c` and expansion rate `d`.
//! The sign of `c^2 - 4(1-d)` splits the solutions into three regimes with
//! explicit parametrizations:
//!
//! * undercritical: a cycloid wound along a logarithmic spiral, with
//!   infinitely many cusps;
//! * critical: one logarithmic spiral and one curve with a single cusp;
//! * overcritical: two logarithmic spirals, a smooth curve and a curve with
//!   one cusp.
//!
//! [`generators`] evaluates the closed forms, [`diffgeo`] recomputes Frenet
//! data and residuals from evaluations alone, [`phaseplane`] covers the linear
//! system of the support components, [`flowcheck`] checks the time evolution,
//! and [`classifier`] produces the taxonomy.
//!
//! Everything is generic over [`Scalar`] (`f32` or `f64`); the aliases at the
//! crate root fix `f64`.

#![allow(clippy::neg_cmp_op_on_partial_ord)]

pub mod branch;
pub mod classifier;
pub mod curve;
pub mod diffgeo;
pub mod error;
pub mod flowcheck;
pub mod generators;
pub mod geometry;
pub mod params;
pub mod phaseplane;
pub mod scalar;

pub use branch::{check_admissible, Branch};
pub use classifier::{
    completeness, shape_class, CompletenessReport, SelfIntersections, ShapeClass,
};
pub use error::{Result, SolitonError};
pub use params::{validate, validate_with, RegimeKind};
pub use scalar::Scalar;

pub type SolitonParams = params::SolitonParams<f64>;
pub type Regime = params::Regime<f64>;
pub type PlanarPoint = geometry::PlanarPoint<f64>;
pub type CurveSample = curve::CurveSample<f64>;
pub type SampledCurve = curve::SampledCurve<f64>;
pub type ThetaWindow = curve::ThetaWindow<f64>;
pub type Tolerances = curve::Tolerances<f64>;
pub type BranchCurve = generators::BranchCurve<f64>;
pub type DerivativeMode = diffgeo::DerivativeMode<f64>;
pub type SolitonLaw = diffgeo::SolitonLaw<f64>;
pub type PhaseState = phaseplane::PhaseState<f64>;
pub type PhaseTrajectory = phaseplane::PhaseTrajectory<f64>;
