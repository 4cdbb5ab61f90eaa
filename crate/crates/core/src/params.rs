//! Motion parameters and the three-way regime split.

use std::fmt;

use serde::{Deserialize, Serialize};

use crate::error::{Result, SolitonError};
use crate::scalar::Scalar;

/// Absolute tolerance on `c^2 - 4(1-d)` below which the critical regime is selected.
pub const DEFAULT_DISCRIMINANT_TOL: f64 = 1e-9;

/// Rotation speed `c` and expansion rate `d` of a self-similar motion.
///
/// The curve `x` is a soliton for `(c, d)` when `c<x,T> - d<x,N> = 1/k` holds
/// along it.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct SolitonParams<T> {
    pub c: T,
    pub d: T,
}

impl<T: Scalar> SolitonParams<T> {
    pub fn new(c: T, d: T) -> Self {
        Self { c, d }
    }

    /// `c^2 - 4(1 - d)`; its sign selects the regime.
    pub fn discriminant(&self) -> T {
        self.c * self.c - T::lit(4.0) * (T::one() - self.d)
    }

    pub fn is_degenerate(&self) -> bool {
        self.c == T::zero() && self.d == T::zero()
    }

    pub fn is_finite(&self) -> bool {
        self.c.is_finite() && self.d.is_finite()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RegimeKind {
    Undercritical,
    Critical,
    Overcritical,
}

impl fmt::Display for RegimeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            RegimeKind::Undercritical => "undercritical",
            RegimeKind::Critical => "critical",
            RegimeKind::Overcritical => "overcritical",
        })
    }
}

/// Regime of a parameter pair together with its derived constants.
///
/// `k` is the discriminant root: `sqrt(1 - d - c^2/4)` when undercritical,
/// zero when critical, `sqrt(c^2/4 + d - 1)` when overcritical. `alpha` and
/// `beta` are the two spiral growth rates `c/2 +- K` and only exist in the
/// overcritical regime.
#[derive(Clone, Copy, Debug, PartialEq, Serialize, Deserialize)]
pub struct Regime<T> {
    pub kind: RegimeKind,
    pub k: T,
    pub alpha: Option<T>,
    pub beta: Option<T>,
}

impl<T: Scalar> Regime<T> {
    /// `(alpha, beta)`, panicking outside the overcritical regime.
    pub(crate) fn rates(&self) -> (T, T) {
        match (self.alpha, self.beta) {
            (Some(a), Some(b)) => (a, b),
            _ => panic!("spiral rates requested outside the overcritical regime"),
        }
    }
}

/// Classifies `params` with the default discriminant tolerance.
pub fn validate<T: Scalar>(params: SolitonParams<T>) -> Result<Regime<T>> {
    validate_with(params, T::lit(DEFAULT_DISCRIMINANT_TOL))
}

/// Classifies `params`, treating `|c^2 - 4(1-d)| <= disc_tol` as critical.
pub fn validate_with<T: Scalar>(params: SolitonParams<T>, disc_tol: T) -> Result<Regime<T>> {
    if !params.is_finite() {
        return Err(SolitonError::NonFinite("soliton parameters"));
    }
    if params.is_degenerate() {
        return Err(SolitonError::DegenerateMotion);
    }
    let SolitonParams { c, d } = params;
    let disc = params.discriminant();
    let half_c = c / T::lit(2.0);

    if disc.abs() <= disc_tol {
        return Ok(Regime {
            kind: RegimeKind::Critical,
            k: T::zero(),
            alpha: None,
            beta: None,
        });
    }
    if disc < T::zero() {
        let k = (T::one() - d - half_c * half_c).sqrt();
        return Ok(Regime {
            kind: RegimeKind::Undercritical,
            k,
            alpha: None,
            beta: None,
        });
    }

    // Roots of a^2 - c a + (1 - d); the smaller one comes from the product so
    // that alpha * beta = 1 - d survives cancellation near d = 1.
    let k = (half_c * half_c + d - T::one()).sqrt();
    let product = T::one() - d;
    let (alpha, beta) = if c >= T::zero() {
        let alpha = half_c + k;
        (alpha, product / alpha)
    } else {
        let beta = half_c - k;
        (product / beta, beta)
    };
    Ok(Regime {
        kind: RegimeKind::Overcritical,
        k,
        alpha: Some(alpha),
        beta: Some(beta),
    })
}
