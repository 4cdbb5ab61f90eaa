use thiserror::Error;

use crate::branch::Branch;
use crate::params::RegimeKind;

pub type Result<T, E = SolitonError> = std::result::Result<T, E>;

/// Failure modes of the soliton routines. Locations are reported as `f64`
/// regardless of the scalar type used for the computation.
#[derive(Debug, Clone, PartialEq, Error)]
pub enum SolitonError {
    #[error("degenerate motion: (c, d) = (0, 0) has neither rotation nor scaling")]
    DegenerateMotion,

    #[error("non-finite input: {0}")]
    NonFinite(&'static str),

    #[error(
        "branch `{branch}` is not admissible in the {regime} regime (admissible: {admissible})"
    )]
    InadmissibleBranch {
        branch: Branch,
        regime: RegimeKind,
        admissible: String,
    },

    #[error("operation requires the undercritical regime, got {0}")]
    NotUndercritical(RegimeKind),

    #[error("exponent overflow at theta = {theta}")]
    Range { theta: f64 },

    #[error("curve is singular near theta = {theta} (speed {speed:e})")]
    NearCusp { theta: f64, speed: f64 },

    #[error("curvature vanishes at theta = {theta}; 1/k is not finite")]
    FlatCurvature { theta: f64 },

    #[error("closed form has a pole at {at}")]
    Pole { at: f64 },

    #[error("curve has no samples")]
    EmptyCurve,

    #[error("invalid argument: {0}")]
    InvalidArgument(String),
}
