use proptest::prelude::*;
use twochoice_core::analysis::{
    critical_p, exact_consensus_time, exact_consensus_time_from, g_alpha, kernel, lower_bound,
    master_relation_time, stationary_points, threshold_report, visit_profile, Regime,
    CRITICAL_BIAS, DEFAULT_ROOT_TOL,
};
use twochoice_testkit::{dense_absorption_time, modified_chain_rates};

proptest! {
    #[test]
    fn kernel_rows_are_stochastic(n in 1usize..400, alpha in 0.001f64..=1.0) {
        let k = kernel(n, alpha).unwrap();
        for i in 0..=n {
            let (up, down) = modified_chain_rates(n, alpha, i);
            prop_assert!((k.up[i] - up).abs() < 1e-15);
            prop_assert!((k.down[i] - down).abs() < 1e-15);
            prop_assert!(k.stay[i] >= -1e-15);
            prop_assert!((k.up[i] + k.down[i] + k.stay[i] - 1.0).abs() < 1e-12);
        }
    }

    #[test]
    fn time_decreases_with_start(n in 2usize..300, alpha in 0.01f64..=1.0) {
        // Non-strict: in slow regimes the early terms vanish below one ulp.
        let mut last = f64::INFINITY;
        for start in 0..=n {
            let t = exact_consensus_time_from(n, alpha, start).unwrap().ln();
            prop_assert!(t <= last);
            last = t;
        }
        prop_assert_eq!(last, f64::NEG_INFINITY);
    }

    #[test]
    fn time_dominates_lower_bound(n in 1usize..2000, alpha in 0.01f64..=1.0, p in 0.0f64..0.99) {
        let t = exact_consensus_time(n, alpha, p).unwrap();
        let lb = lower_bound(n, alpha, p).unwrap();
        prop_assert!(t.ln() >= lb.ln());
    }

    #[test]
    fn master_relation_agrees(n in 1usize..500, alpha in 0.01f64..=1.0, frac in 0.0f64..1.0) {
        let start = ((n as f64) * frac) as usize;
        let direct = exact_consensus_time_from(n, alpha, start).unwrap();
        let master = master_relation_time(&visit_profile(n, alpha, start).unwrap()).unwrap();
        prop_assert!((master.ln() - direct.ln()).abs() < 1e-9);
    }

    #[test]
    fn small_chains_match_dense_solve(n in 1usize..10, alpha in 0.02f64..=1.0, frac in 0.0f64..1.0) {
        let start = ((n as f64) * frac) as usize;
        let exact = exact_consensus_time_from(n, alpha, start).unwrap().value();
        let dense = dense_absorption_time(n, alpha, start);
        prop_assert!((exact - dense).abs() <= 1e-8 * dense);
    }

    #[test]
    fn thresholds_are_ordered(alpha in 0.001f64..0.111) {
        let s = stationary_points(alpha).unwrap();
        let (lo, hi) = s.crossings.unwrap();
        prop_assert!(0.0 < lo && lo <= s.x_star && s.x_star <= hi && hi < 1.0);
        prop_assert!(s.r >= 1.0);
        let p_c = critical_p(alpha, DEFAULT_ROOT_TOL).unwrap();
        prop_assert!(hi < p_c && p_c < 1.0);
        prop_assert!(g_alpha(p_c, alpha).unwrap().abs() < 1e-8);
    }

    #[test]
    fn p_independent_above_critical_bias(alpha in 0.1112f64..1.0, p in 0.0f64..1.0) {
        let r = threshold_report(alpha, DEFAULT_ROOT_TOL).unwrap();
        prop_assert!(r.p_c.is_none());
        prop_assert_eq!(r.classify(p), Regime::FastAnyP);
    }
}

#[test]
fn critical_fraction_grows_as_bias_shrinks() {
    let mut last = 0.0;
    for alpha in [0.11, 0.1, 0.08, 0.05, 0.02, 0.01] {
        let p_c = critical_p(alpha, DEFAULT_ROOT_TOL).unwrap();
        assert!(p_c > last, "alpha={alpha}");
        last = p_c;
    }
    // High-precision references for the roots of g.
    assert!((critical_p(0.05, DEFAULT_ROOT_TOL).unwrap() - 0.71947).abs() < 1e-5);
    assert!((critical_p(0.02, DEFAULT_ROOT_TOL).unwrap() - 0.86030).abs() < 1e-5);
}

#[test]
fn boundary_bias_is_unclassified() {
    let r = threshold_report(CRITICAL_BIAS, DEFAULT_ROOT_TOL).unwrap();
    assert_eq!(r.classify(0.3), Regime::Unclassified);
    assert!(r.p_c.is_none());
}
