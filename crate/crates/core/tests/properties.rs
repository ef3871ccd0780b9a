use padewkb_core::corrections::{delta3_from_delta1, delta_from_delta1};
use padewkb_core::extraction::extract_at_top;
use padewkb_core::quadrature::phase_integral;
use padewkb_core::spectrum::state_density;
use padewkb_core::{PadeParams, PotentialModel};
use proptest::prelude::*;

proptest! {
    #![proptest_config(ProptestConfig { cases: 24, ..ProptestConfig::default() })]

    #[test]
    fn pade_round_trip(bs in -0.3f64..0.3, gs in -0.3f64..0.3, k in 1.0f64..6.0) {
        let depth: f64 = 25.0;
        let (b, g) = (bs / depth.sqrt(), gs / depth);
        let model = PotentialModel::from_pade(PadeParams::new(k, 1.0 / depth, b, g).unwrap(), 1.0).unwrap();
        let r = extract_at_top(&model).unwrap();
        let tol_b = 1e-4f64.max(20.0 * r.residuals.b);
        let tol_g = 1e-4f64.max(20.0 * r.residuals.g);
        prop_assert!((r.params.b - b).abs() < tol_b);
        prop_assert!((r.params.g - g).abs() < tol_g);
    }

    #[test]
    fn turning_points_solve_v_eq_eps(f in 0.01f64..0.99, depth in 0.5f64..80.0) {
        let model = PotentialModel::tanh2(depth, 1.3, 0.7).unwrap();
        let eps = f * depth;
        let (lo, hi) = model.turning_points(eps).unwrap();
        prop_assert!(lo < 0.0 && hi > 0.0);
        prop_assert!((model.evaluate(lo) - eps).abs() < 1e-10 * eps.max(1.0));
        prop_assert!((model.evaluate(hi) - eps).abs() < 1e-10 * eps.max(1.0));
    }

    #[test]
    fn phase_and_density_increase(f in 0.05f64..0.9, step in 0.01f64..0.09) {
        let model = PotentialModel::from_pade(PadeParams::new(2.0, 0.04, 0.05, 0.01).unwrap(), 1.0).unwrap();
        let (a, b) = (f * 25.0, (f + step) * 25.0);
        prop_assert!(phase_integral(&model, a).unwrap().phi_total < phase_integral(&model, b).unwrap().phi_total);
        prop_assert!(state_density(&model, a).unwrap() < state_density(&model, b).unwrap());
    }

    #[test]
    fn resummed_delta_is_bounded(d1 in -1e6f64..1e6) {
        let d = delta_from_delta1(d1);
        prop_assert!(d.abs() < 0.5);
        prop_assert!(d * d1 >= 0.0);
        prop_assert!(d.abs() <= d1.abs());
    }

    #[test]
    fn third_order_term(d1 in -0.01f64..0.01) {
        let gap = delta_from_delta1(d1) - d1 - delta3_from_delta1(d1);
        prop_assert!(gap.abs() <= 48.0 * d1.abs().powi(5) + 4.0 * f64::EPSILON * d1.abs());
    }
}
