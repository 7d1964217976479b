use std::f64::consts::PI;

use mpt_core::measure::{analytic_weight, exponents};
use mpt_core::operators::{build_boson_ops, check_deformed_commutator, check_su2};
use mpt_core::spectrum::{
    delta_param, energy_deformed_form, energy_ladder_form, energy_well_form, f_squared, new_trap,
};
use mpt_core::states::{
    annihilation_residual, coherent_state, coherent_state_with, ladder_moments, number_moments, oracle_expectation,
    FactorialConvention,
};
use mpt_core::statistics::{mandel_q, min_quadrature_variance, quadrature_variance, squeezing_s};
use mpt_core::Complex64;
use proptest::prelude::*;

fn alpha_strategy() -> impl Strategy<Value = Complex64> {
    (0.0f64..8.0, -PI..PI).prop_map(|(r, t)| Complex64::from_polar(r, t))
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(64))]

    #[test]
    fn energy_forms_agree(n_param in 0.01f64..3000.0) {
        let p = new_trap(n_param).unwrap();
        for n in 0..p.num_bound() {
            let w = energy_well_form(&p, n).unwrap();
            let d = energy_deformed_form(&p, n).unwrap();
            let l = energy_ladder_form(&p, n).unwrap();
            prop_assert!((w - d).abs() <= 1e-12 * w.abs().max(d.abs()));
            prop_assert!((w - l).abs() <= 1e-12 * w.abs().max(l.abs()));
        }
    }

    #[test]
    fn levels_stay_below_the_rim(n_param in 0.01f64..3000.0) {
        let p = new_trap(n_param).unwrap();
        let top = energy_deformed_form(&p, p.top_level()).unwrap();
        prop_assert!(top <= p.depth() + 1e-12 * p.depth().max(1.0));
        prop_assert!(energy_deformed_form(&p, 0).unwrap() > 0.0);
        prop_assert!((p.top_level() as f64) < p.s() + 1e-9);
    }

    #[test]
    fn spacings_shrink(n_param in 3.0f64..3000.0) {
        let p = new_trap(n_param).unwrap();
        for n in 0..p.top_level() {
            let gap = energy_deformed_form(&p, n + 1).unwrap() - energy_deformed_form(&p, n).unwrap();
            prop_assert!(gap > 0.0);
            prop_assert!((delta_param(&p, n).unwrap() - (gap - 1.0)).abs() < 1e-10);
            prop_assert!(delta_param(&p, n).unwrap() < 0.0);
        }
    }

    #[test]
    fn deformation_positive_on_bound_range(n_param in 0.01f64..1e6) {
        let p = new_trap(n_param).unwrap();
        prop_assert!(f_squared(&p, p.top_level() + 1).unwrap() > 0.0);
        prop_assert!(f_squared(&p, 0).unwrap() >= 1.0);
    }

    #[test]
    fn algebra_residuals_small(n_param in 0.5f64..1500.0) {
        let p = new_trap(n_param).unwrap();
        let c = check_deformed_commutator(&p).unwrap();
        let s = check_su2(&p).unwrap();
        prop_assert!(c.max_abs_residual < 1e-10 && c.shift_residual < 1e-10);
        prop_assert!(s.max_abs_residual < 1e-10 && s.shift_residual < 1e-10);
    }

    #[test]
    fn states_are_normalized(n_param in 0.3f64..6000.0, alpha in alpha_strategy()) {
        let s = coherent_state(&new_trap(n_param).unwrap(), alpha).unwrap();
        let total: f64 = s.probabilities().sum();
        prop_assert!((total - 1.0).abs() < 1e-12);
    }

    #[test]
    fn factorial_convention_is_a_gauge(n_param in 0.3f64..500.0, alpha in alpha_strategy()) {
        let p = new_trap(n_param).unwrap();
        let a = coherent_state_with(&p, alpha, FactorialConvention::IncludeGround).unwrap();
        let b = coherent_state_with(&p, alpha, FactorialConvention::ExcludeGround).unwrap();
        for (x, y) in a.coeffs().iter().zip(b.coeffs()) {
            prop_assert!((x - y).norm() < 1e-13);
        }
    }

    #[test]
    fn annihilation_matches_closed_form(n_param in 0.3f64..400.0, alpha in alpha_strategy()) {
        let s = coherent_state(&new_trap(n_param).unwrap(), alpha).unwrap();
        let r = annihilation_residual(&s).unwrap();
        prop_assert!(r.deviation < 1e-12);
    }

    #[test]
    fn moments_match_dense_oracle(n_param in 0.3f64..200.0, alpha in alpha_strategy()) {
        let s = coherent_state(&new_trap(n_param).unwrap(), alpha).unwrap();
        let ops = build_boson_ops(s.coeffs().len()).unwrap();
        let (m1, m2) = number_moments(&s);
        prop_assert!((oracle_expectation(&s, &ops.n_hat).unwrap().re - m1).abs() < 1e-10);
        prop_assert!((oracle_expectation(&s, &ops.n_hat.matmul(&ops.n_hat)).unwrap().re - m2).abs() < 1e-10);
        let lm = ladder_moments(&s);
        prop_assert!((oracle_expectation(&s, &ops.a).unwrap() - lm.mean_a).norm() < 1e-10);
        prop_assert!((oracle_expectation(&s, &ops.a.matmul(&ops.a)).unwrap() - lm.mean_a2).norm() < 1e-10);
    }

    #[test]
    fn statistics_bounds(n_param in 0.3f64..2000.0, alpha in alpha_strategy(), phi in -PI..PI) {
        let s = coherent_state(&new_trap(n_param).unwrap(), alpha).unwrap();
        prop_assert!(mandel_q(&s) >= -1.0);
        let r = quadrature_variance(&s, phi);
        prop_assert!(r.var_q > 0.0 && r.var_p > 0.0);
        prop_assert!(r.uncertainty_product() >= 0.25 - 1e-12);
        let m = min_quadrature_variance(&s);
        prop_assert!(m.var_q <= r.var_q + 1e-12);
        prop_assert!((m.var_q - 0.5 - squeezing_s(&s)).abs() < 1e-12);
    }

    #[test]
    fn statistics_ignore_phase(n_param in 0.3f64..500.0, r in 0.0f64..8.0, theta in -PI..PI) {
        let p = new_trap(n_param).unwrap();
        let a = coherent_state(&p, Complex64::new(r, 0.0)).unwrap();
        let b = coherent_state(&p, Complex64::from_polar(r, theta)).unwrap();
        prop_assert!((mandel_q(&a) - mandel_q(&b)).abs() < 1e-12);
        prop_assert!((squeezing_s(&a) - squeezing_s(&b)).abs() < 1e-12);
    }

    #[test]
    fn coefficient_phases_follow_alpha(n_param in 0.3f64..300.0, alpha in alpha_strategy()) {
        prop_assume!(alpha.norm() > 1e-3);
        let s = coherent_state(&new_trap(n_param).unwrap(), alpha).unwrap();
        for (n, c) in s.coeffs().iter().enumerate() {
            let expected = Complex64::from_polar(c.norm(), n as f64 * alpha.arg());
            prop_assert!((c - expected).norm() < 1e-13);
        }
    }

    #[test]
    fn measure_exponents(n_param in 0.3f64..1e4) {
        let p = new_trap(n_param).unwrap();
        for n in [0, p.top_level() / 2, p.top_level()] {
            let (nu, l) = exponents(&p, n);
            prop_assert!((nu + l - (2 * n + 1) as f64).abs() < 1e-9);
            prop_assert!(2.0 * n as f64 + 2.0 - nu > nu.abs());
            prop_assert!(analytic_weight(&p, n).unwrap() > 0.0);
        }
    }
}
