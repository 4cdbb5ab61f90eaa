mod common;

use common::*;
use imcf_soliton::diffgeo::{
    find_cusps_numeric, frenet_at, frenet_on_curve, residual_profile, sample_curve, stencil_jets,
    Jet,
};
use imcf_soliton::{
    Branch, BranchCurve, DerivativeMode, PlanarPoint, RegimeKind, SolitonError, SolitonParams,
    ThetaWindow, Tolerances,
};
use rand::Rng;

#[test]
fn residual_matches_raw_derivative_oracle() {
    let mut rng = rng(21);
    for kind in all_kinds() {
        for _ in 0..10 {
            let p = draw_params(&mut rng, kind);
            for b in branches_of(p) {
                let curve = BranchCurve::new(p, b).unwrap();
                let w = bounded_window(&curve);
                let cusps = curve.cusps_in(w);
                for _ in 0..50 {
                    let theta = rng.gen_range(w.min..w.max);
                    if cusps.iter().any(|c| (c - theta).abs() < 1e-2) {
                        continue;
                    }
                    let s = frenet_on_curve(&curve, theta, DerivativeMode::Analytic).unwrap();
                    let x = oracle_position(p.c, p.d, b, theta).unwrap();
                    let h = 1e-4;
                    let f = |t: f64| oracle_position(p.c, p.d, b, t).unwrap();
                    let v = central_diff(f, theta, h);
                    let a = {
                        let (xp, xm) = (f(theta + h), f(theta - h));
                        (
                            (xp.0 - 2.0 * x.0 + xm.0) / (h * h),
                            (xp.1 - 2.0 * x.1 + xm.1) / (h * h),
                        )
                    };
                    let oracle = oracle_residual(p.c, p.d, x, v, a);
                    let scale = x.0.hypot(x.1) + (1.0 / s.curvature).abs();
                    assert!(
                        oracle.abs() < 1e-4 * scale,
                        "oracle {b} {p:?} {theta}: {oracle}"
                    );
                    assert!(s.residual.abs() < 1e-8, "{b} {p:?} {theta}: {}", s.residual);
                }
            }
        }
    }
}

#[test]
fn analytic_and_finite_difference_curvature_agree() {
    let mut rng = rng(22);
    let fd = DerivativeMode::FiniteDifference { step: 1e-5 };
    for kind in all_kinds() {
        for _ in 0..10 {
            let p = draw_params(&mut rng, kind);
            let mut branches = branches_of(p);
            branches.push(Branch::TranslatingCycloid);
            for b in branches {
                let curve = BranchCurve::new(p, b).unwrap();
                // rounding of omega * theta inside the exponentials also feeds the
                // second difference, so keep |theta| moderate
                let half = bounded_window(&curve).max.min(std::f64::consts::PI);
                let w = ThetaWindow::symmetric(half).unwrap();
                let cusps = curve.cusps_in(w);
                for _ in 0..50 {
                    let theta = rng.gen_range(w.min..w.max);
                    if cusps.iter().any(|c| (c - theta).abs() < 0.05) {
                        continue;
                    }
                    // the second difference carries about 4 eps |x| / h^2 of rounding,
                    // which costs that much over |x'| in relative curvature; stay
                    // where |x'| >= |x|
                    if curve.derivative(theta).unwrap().norm() < curve.eval(theta).unwrap().norm() {
                        continue;
                    }
                    let exact = frenet_on_curve(&curve, theta, DerivativeMode::Analytic).unwrap();
                    let approx = frenet_on_curve(&curve, theta, fd).unwrap();
                    let rel = (exact.curvature - approx.curvature).abs() / exact.curvature.abs();
                    assert!(rel < 1e-5, "{b} {p:?} {theta}: {rel}");
                }
            }
        }
    }
}

#[test]
fn support_components_are_orthonormal_coordinates() {
    let mut rng = rng(23);
    for kind in all_kinds() {
        for _ in 0..10 {
            let p = draw_params(&mut rng, kind);
            for b in branches_of(p) {
                let curve = BranchCurve::new(p, b).unwrap();
                let sampled = sample_curve(
                    p,
                    b,
                    bounded_window(&curve),
                    500,
                    &Tolerances::default(),
                    DerivativeMode::Analytic,
                )
                .unwrap();
                sampled.check_invariants(1e-2).unwrap();
                for s in &sampled.samples {
                    let r2 = s.position.norm_sqr();
                    assert!((s.tau * s.tau + s.nu * s.nu - r2).abs() <= 1e-12 * r2.max(1.0));
                    assert!((s.normal - s.tangent.rotate_quarter()).norm() == 0.0);
                }
            }
        }
    }
}

#[test]
fn unit_circle_is_positively_curved() {
    let p = SolitonParams::new(0.0, 1.0);
    for theta in [-3.0, 0.0, 0.5, 2.9] {
        let s = frenet_at(p, Branch::CriticalSpiral, theta, DerivativeMode::Analytic).unwrap();
        assert!((s.curvature - 1.0).abs() < 1e-15);
        assert!((s.nu + 1.0).abs() < 1e-15);
    }
    let sampled = sample_curve(
        p,
        Branch::CriticalSpiral,
        ThetaWindow::default_window(),
        2000,
        &Tolerances::default(),
        DerivativeMode::Analytic,
    )
    .unwrap();
    assert!(residual_profile(&sampled).unwrap().max_abs_residual <= 1e-14);
}

#[test]
fn spirals_on_default_grid() {
    for (c, d) in [(3.0, 0.0), (0.5, 1.5), (2.0, 0.0), (-1.0, 0.75)] {
        let p = SolitonParams::new(c, d);
        let kind = imcf_soliton::validate(p).unwrap().kind;
        for &b in Branch::for_regime(kind).iter().filter(|b| b.is_spiral()) {
            let sampled = sample_curve(
                p,
                b,
                ThetaWindow::default_window(),
                2000,
                &Tolerances::default(),
                DerivativeMode::Analytic,
            )
            .unwrap();
            let prof = residual_profile(&sampled).unwrap();
            assert!(
                prof.max_rel_residual < 1e-12,
                "{b} ({c},{d}) {}",
                prof.max_rel_residual
            );
            if kind != RegimeKind::Overcritical || b == Branch::SpiralBeta {
                assert!(
                    prof.max_abs_residual < 1e-8,
                    "{b} ({c},{d}) {}",
                    prof.max_abs_residual
                );
            }
        }
    }
}

#[test]
fn corrupted_sample_is_detected() {
    let p = SolitonParams::new(3.0, 0.0);
    let mut sampled = sample_curve(
        p,
        Branch::OvercriticalMinus,
        ThetaWindow::new(-2.0, 2.0).unwrap(),
        400,
        &Tolerances::default(),
        DerivativeMode::Analytic,
    )
    .unwrap();
    assert!(residual_profile(&sampled).unwrap().max_abs_residual < 1e-10);
    sampled.samples[123].position.re += 1e-3;
    let prof = residual_profile(&sampled).unwrap();
    assert!(prof.max_abs_residual > 1e-4);
    assert_eq!(prof.worst_index, 123);
}

#[test]
fn numeric_cusps_agree_with_closed_forms() {
    let w = ThetaWindow::new(-3.0, 3.0).unwrap();
    let found =
        find_cusps_numeric(SolitonParams::new(2.0, 0.0), Branch::CriticalGeneral, w).unwrap();
    assert_eq!(found.len(), 1);
    assert!((found[0] + 1.0).abs() < 1e-8);
    let smooth = find_cusps_numeric(
        SolitonParams::new(3.0, 0.0),
        Branch::OvercriticalPlus,
        ThetaWindow::new(-5.0, 5.0).unwrap(),
    )
    .unwrap();
    assert!(smooth.is_empty());

    let mut rng = rng(24);
    for kind in all_kinds() {
        for _ in 0..10 {
            let p = draw_params(&mut rng, kind);
            for b in branches_of(p) {
                let curve = BranchCurve::new(p, b).unwrap();
                let w = bounded_window(&curve);
                let want = curve.cusps_in(w);
                let got = find_cusps_numeric(p, b, w).unwrap();
                assert_eq!(got.len(), want.len(), "{b} {p:?}");
                for (g, e) in got.iter().zip(&want) {
                    assert!((g - e).abs() < 1e-8, "{b} {p:?}: {g} vs {e}");
                }
            }
        }
    }
}

#[test]
fn undercritical_cusp_spacing_by_grid_scan() {
    let p = SolitonParams::new(1.0, 0.0);
    let w = ThetaWindow::new(0.0, 4.0 * std::f64::consts::PI).unwrap();
    let found = find_cusps_numeric(p, Branch::UndercriticalGeneral, w).unwrap();
    assert!(found.len() >= 3);
    let spacing = 2.0 * std::f64::consts::PI / 3f64.sqrt();
    for pair in found.windows(2) {
        assert!((pair[1] - pair[0] - spacing).abs() < 1e-6);
    }
    // brute-force minima of |x'| from the independent closed form
    let f = |t: f64| oracle_position(1.0, 0.0, Branch::UndercriticalGeneral, t).unwrap();
    let speed = |t: f64| {
        let v = central_diff(f, t, 1e-6);
        v.0.hypot(v.1)
    };
    let minima: Vec<f64> = grid_minima(speed, w.min, w.max, 200_000)
        .into_iter()
        .filter(|&t| {
            let x = f(t);
            speed(t) < 1e-3 * x.0.hypot(x.1)
        })
        .collect();
    assert_eq!(minima.len(), found.len());
    for (m, c) in minima.iter().zip(&found) {
        assert!((m - c).abs() < 1e-3);
    }
}

#[test]
fn stencil_matches_analytic_jets() {
    let p = SolitonParams::new(0.5, 2.0);
    let curve = BranchCurve::new(p, Branch::OvercriticalPlus).unwrap();
    let thetas = ThetaWindow::new(-1.0, 1.0).unwrap().grid(201).unwrap();
    let positions: Vec<PlanarPoint> = thetas.iter().map(|&t| curve.eval(t).unwrap()).collect();
    let jets = stencil_jets(&thetas, &positions);
    assert!(jets[0].is_none() && jets[1].is_none() && jets[200].is_none());
    for (i, jet) in jets.iter().enumerate().skip(2).take(197) {
        let Jet {
            velocity,
            acceleration,
            ..
        } = jet.unwrap();
        assert!((velocity - curve.derivative(thetas[i]).unwrap()).norm() < 1e-7);
        assert!((acceleration - curve.second_derivative(thetas[i]).unwrap()).norm() < 1e-5);
    }
    // a gap in the grid breaks the stencil
    let mut gapped = thetas.clone();
    gapped.remove(100);
    let mut gp = positions.clone();
    gp.remove(100);
    let jets = stencil_jets(&gapped, &gp);
    assert!(jets[98].is_none() && jets[99].is_none() && jets[100].is_none());
}

#[test]
fn singular_points_are_reported() {
    let r = frenet_at(
        SolitonParams::new(2.0, 0.0),
        Branch::CriticalGeneral,
        -1.0,
        DerivativeMode::Analytic,
    );
    assert!(matches!(r, Err(SolitonError::NearCusp { .. })));
    let empty = imcf_soliton::SampledCurve {
        params: SolitonParams::new(1.0, 0.0),
        branch: Branch::UndercriticalGeneral,
        theta_grid: vec![],
        samples: vec![],
        cusps: vec![],
    };
    assert_eq!(residual_profile(&empty), Err(SolitonError::EmptyCurve));
}
