//! Solution branches and their admissibility per regime.

use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::params::{validate_with, Regime, RegimeKind, SolitonParams};
use crate::scalar::Scalar;

/// One solution family, up to rotation and scaling.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "kebab-case")]
pub enum Branch {
    /// Logarithmic spiral `e^{(alpha+i)theta}` (overcritical).
    SpiralAlpha,
    /// Logarithmic spiral `e^{(beta+i)theta}` (overcritical).
    SpiralBeta,
    /// Logarithmic spiral `e^{(c/2+i)theta}` (critical).
    CriticalSpiral,
    /// Critical curve with one cusp.
    CriticalGeneral,
    /// Smooth sum of the two overcritical spirals.
    OvercriticalPlus,
    /// Difference of the two overcritical spirals, one cusp.
    OvercriticalMinus,
    /// Cycloid wound along a spiral, infinitely many cusps.
    #[serde(rename = "undercritical")]
    UndercriticalGeneral,
    /// Pure translation soliton; ignores `(c, d)`.
    TranslatingCycloid,
}

const UNDERCRITICAL: &[Branch] = &[Branch::UndercriticalGeneral];
const CRITICAL: &[Branch] = &[Branch::CriticalSpiral, Branch::CriticalGeneral];
const OVERCRITICAL: &[Branch] = &[
    Branch::SpiralAlpha,
    Branch::SpiralBeta,
    Branch::OvercriticalPlus,
    Branch::OvercriticalMinus,
];

impl Branch {
    pub const ALL: [Branch; 8] = [
        Branch::SpiralAlpha,
        Branch::SpiralBeta,
        Branch::CriticalSpiral,
        Branch::CriticalGeneral,
        Branch::OvercriticalPlus,
        Branch::OvercriticalMinus,
        Branch::UndercriticalGeneral,
        Branch::TranslatingCycloid,
    ];

    pub fn name(self) -> &'static str {
        match self {
            Branch::SpiralAlpha => "spiral-alpha",
            Branch::SpiralBeta => "spiral-beta",
            Branch::CriticalSpiral => "critical-spiral",
            Branch::CriticalGeneral => "critical-general",
            Branch::OvercriticalPlus => "overcritical-plus",
            Branch::OvercriticalMinus => "overcritical-minus",
            Branch::UndercriticalGeneral => "undercritical",
            Branch::TranslatingCycloid => "translating-cycloid",
        }
    }

    /// The rotation/scaling solution branches of a regime. The translating
    /// cycloid belongs to no regime and is never listed.
    pub fn for_regime(kind: RegimeKind) -> &'static [Branch] {
        match kind {
            RegimeKind::Undercritical => UNDERCRITICAL,
            RegimeKind::Critical => CRITICAL,
            RegimeKind::Overcritical => OVERCRITICAL,
        }
    }

    pub fn is_spiral(self) -> bool {
        matches!(
            self,
            Branch::SpiralAlpha | Branch::SpiralBeta | Branch::CriticalSpiral
        )
    }

    /// Whether the closed form of this branch has singular points.
    pub fn has_cusps(self) -> bool {
        matches!(
            self,
            Branch::CriticalGeneral
                | Branch::OvercriticalMinus
                | Branch::UndercriticalGeneral
                | Branch::TranslatingCycloid
        )
    }
}

impl fmt::Display for Branch {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for Branch {
    type Err = SolitonError;

    fn from_str(s: &str) -> Result<Self> {
        let normalized = s.trim().to_ascii_lowercase().replace('_', "-");
        if normalized == "undercritical-general" {
            return Ok(Branch::UndercriticalGeneral);
        }
        Branch::ALL
            .iter()
            .copied()
            .find(|b| b.name() == normalized)
            .ok_or_else(|| {
                let names: Vec<_> = Branch::ALL.iter().map(|b| b.name()).collect();
                SolitonError::InvalidArgument(format!(
                    "unknown branch `{s}` (expected one of {})",
                    names.join(", ")
                ))
            })
    }
}

/// Checks that `branch` exists for `params`. Returns the regime, or `None`
/// for the translating cycloid, which does not depend on `(c, d)`.
pub fn check_admissible<T: Scalar>(
    params: SolitonParams<T>,
    branch: Branch,
    disc_tol: T,
) -> Result<Option<Regime<T>>> {
    if branch == Branch::TranslatingCycloid {
        return Ok(None);
    }
    let regime = validate_with(params, disc_tol)?;
    let allowed = Branch::for_regime(regime.kind);
    if allowed.contains(&branch) {
        Ok(Some(regime))
    } else {
        Err(SolitonError::InadmissibleBranch {
            branch,
            regime: regime.kind,
            admissible: allowed
                .iter()
                .map(|b| b.name())
                .collect::<Vec<_>>()
                .join(", "),
        })
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn names_round_trip() {
        for b in Branch::ALL {
            assert_eq!(b.name().parse::<Branch>().unwrap(), b);
        }
        assert_eq!(
            "undercritical_general".parse::<Branch>().unwrap(),
            Branch::UndercriticalGeneral
        );
        assert!("spiral-gamma".parse::<Branch>().is_err());
    }

    #[test]
    fn admissibility() {
        let over = SolitonParams::new(3.0, 0.0);
        assert!(check_admissible(over, Branch::OvercriticalPlus, 1e-9).is_ok());
        let err = check_admissible(over, Branch::CriticalGeneral, 1e-9).unwrap_err();
        match err {
            SolitonError::InadmissibleBranch {
                regime, admissible, ..
            } => {
                assert_eq!(regime, RegimeKind::Overcritical);
                assert!(admissible.contains("overcritical-minus"));
            }
            other => panic!("unexpected {other:?}"),
        }
        // the cycloid ignores the parameters, even degenerate ones
        let zero = SolitonParams::new(0.0, 0.0);
        assert_eq!(
            check_admissible(zero, Branch::TranslatingCycloid, 1e-9),
            Ok(None)
        );
        assert_eq!(
            check_admissible(zero, Branch::CriticalSpiral, 1e-9),
            Err(SolitonError::DegenerateMotion)
        );
    }
}
