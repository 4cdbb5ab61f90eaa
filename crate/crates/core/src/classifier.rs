//! Regime taxonomy: undercritical shape classes and per-branch
//! completeness, compactness, embeddedness and smoothness verdicts.

use serde::{Deserialize, Serialize};

use crate::branch::{check_admissible, Branch};
use crate::error::{Result, SolitonError};
use crate::params::{validate_with, RegimeKind, SolitonParams, DEFAULT_DISCRIMINANT_TOL};
use crate::scalar::Scalar;

/// Where the cycloid arches of an undercritical curve sit relative to the
/// guiding spiral.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum ShapeClass {
    /// `c^2 < -4d` (`K > 1`).
    CycloidInside,
    /// `c^2 = -4d` (`K = 1`): the guiding curve degenerates to a ray.
    CycloidOnRay,
    /// `-4d < c^2 < 4(1 - d)` (`K < 1`).
    CycloidOutside,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum SelfIntersections {
    None,
    Infinite,
    Undetermined,
}

#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct CompletenessReport {
    pub branch: Branch,
    pub complete: bool,
    pub compact: bool,
    /// `None` where no verdict is established.
    pub embedded: Option<bool>,
    pub smooth: bool,
    pub self_intersections: SelfIntersections,
    pub notes: String,
}

pub fn shape_class<T: Scalar>(params: SolitonParams<T>) -> Result<ShapeClass> {
    shape_class_with(params, T::lit(DEFAULT_DISCRIMINANT_TOL))
}

/// Trichotomy on `c^2` against `-4d`, with `|c^2 + 4d| <= disc_tol` on the ray.
pub fn shape_class_with<T: Scalar>(params: SolitonParams<T>, disc_tol: T) -> Result<ShapeClass> {
    let regime = validate_with(params, disc_tol)?;
    if regime.kind != RegimeKind::Undercritical {
        return Err(SolitonError::NotUndercritical(regime.kind));
    }
    let gap = params.c * params.c + T::lit(4.0) * params.d;
    Ok(if gap.abs() <= disc_tol {
        ShapeClass::CycloidOnRay
    } else if gap < T::zero() {
        ShapeClass::CycloidInside
    } else {
        ShapeClass::CycloidOutside
    })
}

pub fn completeness<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
) -> Result<CompletenessReport> {
    completeness_with(params, branch, T::lit(DEFAULT_DISCRIMINANT_TOL))
}

/// Completeness verdicts per branch.
///
/// Logarithmic spirals `e^{(a+i)theta}` with `a != 0` have finite length
/// towards the origin and are reported incomplete; `a = 0` is the unit circle.
/// Branches with cusps are never smooth or complete. The smooth overcritical
/// curve is complete exactly when `d >= 1`.
pub fn completeness_with<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    disc_tol: T,
) -> Result<CompletenessReport> {
    let regime = check_admissible(params, branch, disc_tol)?;
    let report =
        |complete, compact, embedded, smooth, self_intersections, notes: &str| CompletenessReport {
            branch,
            complete,
            compact,
            embedded,
            smooth,
            self_intersections,
            notes: notes.to_string(),
        };

    if branch.is_spiral() {
        let growth = match branch {
            Branch::SpiralAlpha => regime.unwrap().rates().0,
            Branch::SpiralBeta => regime.unwrap().rates().1,
            _ => params.c / T::lit(2.0),
        };
        return Ok(if growth.abs() <= disc_tol {
            report(
                true,
                true,
                Some(true),
                true,
                SelfIntersections::None,
                "the unit circle, a closed embedded curve",
            )
        } else {
            report(
                false,
                false,
                None,
                true,
                SelfIntersections::Undetermined,
                "logarithmic spiral: finite arc length into the origin; embeddedness not determined",
            )
        });
    }

    match branch {
        Branch::CriticalGeneral => Ok(report(
            false,
            false,
            Some(false),
            false,
            SelfIntersections::Undetermined,
            "one cusp separating an inner arm spiralling into the origin from an outer arm",
        )),
        Branch::OvercriticalMinus => Ok(report(
            false,
            false,
            Some(false),
            false,
            SelfIntersections::Undetermined,
            "one cusp; both ends asymptotic to the alpha and beta spirals",
        )),
        Branch::UndercriticalGeneral => Ok(report(
            false,
            false,
            Some(false),
            false,
            SelfIntersections::Undetermined,
            "cycloid wound along a spiral; infinitely many cusps",
        )),
        Branch::TranslatingCycloid => Ok(report(
            false,
            false,
            Some(false),
            false,
            SelfIntersections::None,
            "translating cycloid; cusps at every multiple of 2 pi",
        )),
        Branch::OvercriticalPlus => {
            let d = params.d;
            let (alpha, beta) = regime.unwrap().rates();
            if d < T::one() {
                Ok(report(
                    false,
                    false,
                    None,
                    true,
                    SelfIntersections::Undetermined,
                    "smooth, but alpha and beta share a sign: one end reaches the origin in finite length",
                ))
            } else if alpha.abs() <= disc_tol || beta.abs() <= disc_tol {
                Ok(report(
                    true,
                    false,
                    Some(false),
                    true,
                    SelfIntersections::None,
                    "d = 1: one end follows a logarithmic spiral, the other converges to a circle; \
                     no self-intersection but not embedded",
                ))
            } else {
                Ok(report(
                    true,
                    false,
                    Some(false),
                    true,
                    SelfIntersections::Infinite,
                    "beta < 0 < alpha: both ends go to infinity along spirals turning in opposite \
                     directions; infinitely many self-intersections",
                ))
            }
        }
        _ => unreachable!("spiral branches handled above"),
    }
}

/// Reports for every branch admissible at `params`.
pub fn completeness_all<T: Scalar>(
    params: SolitonParams<T>,
    disc_tol: T,
) -> Result<Vec<CompletenessReport>> {
    let regime = validate_with(params, disc_tol)?;
    Branch::for_regime(regime.kind)
        .iter()
        .map(|&b| completeness_with(params, b, disc_tol))
        .collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    fn p(c: f64, d: f64) -> SolitonParams<f64> {
        SolitonParams::new(c, d)
    }

    #[test]
    fn shape_examples() {
        assert_eq!(
            shape_class(p(1.0, -1.0)).unwrap(),
            ShapeClass::CycloidInside
        );
        assert_eq!(shape_class(p(2.0, -1.0)).unwrap(), ShapeClass::CycloidOnRay);
        assert_eq!(
            shape_class(p(1.0, 0.0)).unwrap(),
            ShapeClass::CycloidOutside
        );
        assert_eq!(
            shape_class(p(3.0, 0.0)),
            Err(SolitonError::NotUndercritical(RegimeKind::Overcritical))
        );
    }

    #[test]
    fn circle_is_compact() {
        let r = completeness(p(0.0, 1.0), Branch::CriticalSpiral).unwrap();
        assert!(r.compact && r.complete && r.smooth);
        assert_eq!(r.embedded, Some(true));
    }

    #[test]
    fn overcritical_plus_verdicts() {
        let r = completeness(p(3.0, 0.0), Branch::OvercriticalPlus).unwrap();
        assert!(!r.complete && r.smooth);

        let r = completeness(p(0.0, 2.0), Branch::OvercriticalPlus).unwrap();
        assert!(r.complete && !r.compact && r.smooth);
        assert_eq!(r.self_intersections, SelfIntersections::Infinite);

        let r = completeness(p(1.5, 1.0), Branch::OvercriticalPlus).unwrap();
        assert!(r.complete && !r.compact);
        assert_eq!(r.embedded, Some(false));
        assert_eq!(r.self_intersections, SelfIntersections::None);
    }

    #[test]
    fn circle_inside_overcritical_family() {
        // d = 1, c > 0: beta = 0 and the beta spiral is the unit circle
        let r = completeness(p(1.5, 1.0), Branch::SpiralBeta).unwrap();
        assert!(r.compact);
        let r = completeness(p(1.5, 1.0), Branch::SpiralAlpha).unwrap();
        assert!(!r.complete && r.smooth);
    }

    #[test]
    fn cusped_branches_are_incomplete() {
        for (params, b) in [
            (p(2.0, 0.0), Branch::CriticalGeneral),
            (p(3.0, 0.0), Branch::OvercriticalMinus),
            (p(0.0, 2.0), Branch::OvercriticalMinus),
            (p(1.0, 0.0), Branch::UndercriticalGeneral),
            (p(0.0, 0.0), Branch::TranslatingCycloid),
        ] {
            let r = completeness(params, b).unwrap();
            assert!(!r.smooth && !r.complete && !r.compact, "{b}");
        }
    }

    #[test]
    fn inadmissible_pairing() {
        assert!(matches!(
            completeness(p(1.0, 0.0), Branch::SpiralAlpha),
            Err(SolitonError::InadmissibleBranch { .. })
        ));
    }
}
