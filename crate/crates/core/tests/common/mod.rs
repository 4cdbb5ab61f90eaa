//! Test-only oracles and parameter draws, independent of the library's
//! evaluation paths.
#![allow(dead_code)]

use imcf_soliton::{Branch, BranchCurve, RegimeKind, SolitonParams, ThetaWindow};
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}

/// Random parameters strictly inside a regime (critical draws lie on the parabola).
pub fn draw_params(rng: &mut ChaCha8Rng, kind: RegimeKind) -> SolitonParams {
    loop {
        let c: f64 = rng.gen_range(-4.0..4.0);
        let p = match kind {
            RegimeKind::Critical => SolitonParams::new(c, 1.0 - c * c / 4.0),
            RegimeKind::Overcritical => {
                let d = rng.gen_range(-2.0..3.0);
                SolitonParams::new(c, d)
            }
            RegimeKind::Undercritical => {
                let c = c / 2.0;
                let d = rng.gen_range(-3.0..1.0);
                SolitonParams::new(c, d)
            }
        };
        let disc = p.discriminant();
        let ok = match kind {
            RegimeKind::Critical => p.c.abs() > 1e-3 || p.d != 0.0,
            RegimeKind::Overcritical => disc > 0.05,
            RegimeKind::Undercritical => disc < -0.05,
        };
        if ok && !(p.c == 0.0 && p.d == 0.0) {
            return p;
        }
    }
}

pub fn all_kinds() -> [RegimeKind; 3] {
    [
        RegimeKind::Undercritical,
        RegimeKind::Critical,
        RegimeKind::Overcritical,
    ]
}

/// Window keeping exponential growth below `e^5`, capped at `[-3 pi, 3 pi]`.
pub fn bounded_window(curve: &BranchCurve) -> ThetaWindow {
    let growth = curve.max_growth();
    let half = if growth > 0.0 {
        (5.0 / growth).min(3.0 * std::f64::consts::PI)
    } else {
        3.0 * std::f64::consts::PI
    };
    ThetaWindow::symmetric(half).unwrap()
}

pub fn branches_of(p: SolitonParams) -> Vec<Branch> {
    let kind = imcf_soliton::validate(p).unwrap().kind;
    Branch::for_regime(kind).to_vec()
}

/// Complex arithmetic on `(re, im)` pairs, kept separate from `num_complex`.
pub type C = (f64, f64);

pub fn cmul(a: C, b: C) -> C {
    (a.0 * b.0 - a.1 * b.1, a.0 * b.1 + a.1 * b.0)
}

pub fn cexp(a: C) -> C {
    let m = a.0.exp();
    (m * a.1.cos(), m * a.1.sin())
}

/// Exact propagator `exp(A s)` of the linear phase-plane system
/// `A = [[c, 1-d], [-1, 0]]` acting on `(tau, nu)`, by Cayley-Hamilton:
/// `exp(A s) = e^{c s / 2} (f0(s) I + f1(s) (A - c/2 I))`.
pub fn linear_propagator(c: f64, d: f64, s: f64, state: (f64, f64)) -> (f64, f64) {
    let half = c / 2.0;
    let q2 = half * half + d - 1.0;
    let (f0, f1) = if q2 > 0.0 {
        let q = q2.sqrt();
        ((q * s).cosh(), (q * s).sinh() / q)
    } else if q2 < 0.0 {
        let q = (-q2).sqrt();
        ((q * s).cos(), (q * s).sin() / q)
    } else {
        (1.0, s)
    };
    let (tau, nu) = state;
    let shifted = (half * tau + (1.0 - d) * nu, -tau - half * nu);
    let e = (half * s).exp();
    (
        e * (f0 * tau + f1 * shifted.0),
        e * (f0 * nu + f1 * shifted.1),
    )
}

/// Central difference of a complex-valued function.
pub fn central_diff<F: Fn(f64) -> C>(f: F, t: f64, h: f64) -> C {
    let a = f(t + h);
    let b = f(t - h);
    ((a.0 - b.0) / (2.0 * h), (a.1 - b.1) / (2.0 * h))
}

/// Brute-force scan for local minima of `|x'|` on a uniform grid.
pub fn grid_minima<F: Fn(f64) -> f64>(speed: F, lo: f64, hi: f64, n: usize) -> Vec<f64> {
    let h = (hi - lo) / n as f64;
    let vals: Vec<f64> = (0..=n).map(|i| speed(lo + h * i as f64)).collect();
    (1..n)
        .filter(|&i| vals[i] < vals[i - 1] && vals[i] <= vals[i + 1])
        .map(|i| lo + h * i as f64)
        .collect()
}

/// Closed forms re-derived on `(re, im)` pairs; returns `None` for branches
/// not admissible at `(c, d)`.
pub fn oracle_position(c: f64, d: f64, branch: Branch, theta: f64) -> Option<C> {
    let half = c / 2.0;
    let disc = c * c - 4.0 * (1.0 - d);
    let spiral = |a: f64| cexp((a * theta, theta));
    let add = |a: C, b: C| (a.0 + b.0, a.1 + b.1);
    let over = || {
        let k = (half * half + d - 1.0).sqrt();
        (half + k, half - k)
    };
    match branch {
        Branch::SpiralAlpha if disc > 0.0 => Some(spiral(over().0)),
        Branch::SpiralBeta if disc > 0.0 => Some(spiral(over().1)),
        Branch::CriticalSpiral => Some(spiral(half)),
        Branch::CriticalGeneral => {
            let e = spiral(half);
            let lead = cmul((-half * theta, theta), e);
            Some((lead.0 - e.0, lead.1 - e.1))
        }
        Branch::OvercriticalPlus | Branch::OvercriticalMinus if disc > 0.0 => {
            let (a, b) = over();
            let s = if branch == Branch::OvercriticalPlus {
                1.0
            } else {
                -1.0
            };
            let first = cmul(spiral(a), (-a, 1.0));
            let second = cmul(spiral(b), (-b * s, s));
            Some(add(first, second))
        }
        Branch::UndercriticalGeneral if disc < 0.0 => {
            let k = (1.0 - d - half * half).sqrt();
            let first = cmul(cexp((half * theta, (k + 1.0) * theta)), (-half, 1.0 - k));
            let second = cmul(cexp((half * theta, (1.0 - k) * theta)), (-half, 1.0 + k));
            Some(add(first, second))
        }
        Branch::TranslatingCycloid => {
            Some((0.25 * (theta - theta.sin()), 0.25 * (1.0 - theta.cos())))
        }
        _ => None,
    }
}

/// Soliton residual from raw derivatives, without the library's frame code.
pub fn oracle_residual(c: f64, d: f64, x: C, v: C, a: C) -> f64 {
    let speed = v.0.hypot(v.1);
    let t = (v.0 / speed, v.1 / speed);
    let n = (-t.1, t.0);
    let k = (v.0 * a.1 - v.1 * a.0) / speed.powi(3);
    let tau = x.0 * t.0 + x.1 * t.1;
    let nu = x.0 * n.0 + x.1 * n.1;
    c * tau - d * nu - 1.0 / k
}
