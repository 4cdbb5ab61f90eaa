use imcf_soliton::diffgeo::{frame_from_jet, frenet_on_curve, Jet};
use imcf_soliton::phaseplane::{integrate_trajectory, vector_field};
use imcf_soliton::{
    validate, Branch, BranchCurve, DerivativeMode, PhaseState, RegimeKind, SolitonLaw,
    SolitonParams,
};
use proptest::prelude::*;

fn params() -> impl Strategy<Value = SolitonParams> {
    (-5.0..5.0f64, -5.0..5.0f64)
        .prop_filter("degenerate motion", |(c, d)| c.abs() + d.abs() > 1e-3)
        .prop_map(|(c, d)| SolitonParams::new(c, d))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(200))]

    #[test]
    fn regime_follows_discriminant(p in params()) {
        let kind = validate(p).unwrap().kind;
        let disc = p.c * p.c - 4.0 * (1.0 - p.d);
        let want = if disc.abs() <= 1e-9 {
            RegimeKind::Critical
        } else if disc > 0.0 {
            RegimeKind::Overcritical
        } else {
            RegimeKind::Undercritical
        };
        prop_assert_eq!(kind, want);
    }

    #[test]
    fn residual_vanishes_on_every_branch(p in params(), u in -1.0..1.0f64) {
        let kind = validate(p).unwrap().kind;
        for &b in Branch::for_regime(kind) {
            let curve = BranchCurve::new(p, b).unwrap();
            let half = if curve.max_growth() > 0.0 { (3.0 / curve.max_growth()).min(6.0) } else { 6.0 };
            let theta = u * half;
            let Ok(s) = frenet_on_curve(&curve, theta, DerivativeMode::Analytic) else { continue };
            let size = s.position.norm() + s.curvature.recip().abs();
            // skip the immediate neighbourhood of a cusp, where 1/k -> 0
            if curve.derivative(theta).unwrap().norm() < 1e-6 * size {
                continue;
            }
            prop_assert!(s.residual.abs() <= 1e-9 * size.max(1.0), "{} {:?} {}", b, p, s.residual);
            let r2 = s.position.norm_sqr();
            prop_assert!((s.tau * s.tau + s.nu * s.nu - r2).abs() <= 1e-12 * r2.max(1.0));
        }
    }

    #[test]
    fn similarity_keeps_parameters(
        p in params(),
        u in -1.0..1.0f64,
        scale in 0.1..10.0f64,
        rotation in -3.2..3.2f64,
    ) {
        let kind = validate(p).unwrap().kind;
        for &b in Branch::for_regime(kind) {
            let curve = BranchCurve::new(p, b).unwrap();
            let theta = u * 2.0;
            let jet = Jet {
                position: curve.eval(theta).unwrap(),
                velocity: curve.derivative(theta).unwrap(),
                acceleration: curve.second_derivative(theta).unwrap(),
            };
            let law = SolitonLaw::Similarity(p);
            let (Ok(a), Ok(moved)) = (frame_from_jet(theta, jet, law), frame_from_jet(theta, jet.similarity(scale, rotation), law)) else { continue };
            let size = a.position.norm() + a.curvature.recip().abs();
            if curve.derivative(theta).unwrap().norm() < 1e-6 * size {
                continue;
            }
            // curvature scales by 1/s, the residual by s
            prop_assert!((moved.curvature * scale - a.curvature).abs() <= 1e-9 * a.curvature.abs());
            prop_assert!((moved.residual - scale * a.residual).abs() <= 1e-8 * scale * size.max(1.0));
        }
    }

    #[test]
    fn field_is_linear(p in params(), a in -3.0..3.0f64, b in -3.0..3.0f64, k in -4.0..4.0f64) {
        let f = vector_field(p, &PhaseState::from_cartesian(a, b));
        let g = vector_field(p, &PhaseState::from_cartesian(k * a, k * b));
        prop_assert!((g.0 - k * f.0).abs() <= 1e-12 * (1.0 + g.0.abs()));
        prop_assert!((g.1 - k * f.1).abs() <= 1e-12 * (1.0 + g.1.abs()));
    }

    #[test]
    fn trajectories_are_finite_and_ordered(p in params(), phi in -3.2..3.2f64) {
        let t = integrate_trajectory(p, PhaseState::from_polar(1.0, phi), (0.0, 1.0), 1e-2).unwrap();
        prop_assert!(t.states.iter().all(|s| s.is_finite()));
        prop_assert!(t.sbar_grid.windows(2).all(|w| w[0] < w[1]));
    }
}
