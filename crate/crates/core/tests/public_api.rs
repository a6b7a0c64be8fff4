use irfield_core::field::effective_width_sq;
use irfield_core::{
    cutoff_from_duration, eikonal_product, enclosed_charge_fraction, finite_t_tau, form_factor,
    ir_brackets, perm_sum, screening_factor, thermal_bracket_oracle, zero_t_threshold_time,
    CutoffScheme, EikonalWeights, Error, GaussianPacket, HierarchyPolicy, PhysParams, Tolerance,
};
use proptest::prelude::*;

fn tol() -> Tolerance {
    Tolerance::relative(1e-12)
}

#[test]
fn reference_timescales() {
    let zero = zero_t_threshold_time(&PhysParams::electron(0.0)).unwrap();
    assert!((zero.log10_tau - 540.015976084218).abs() < 1e-9);
    assert!(zero.tau_seconds.is_none());

    let p = PhysParams::electron(0.02525);
    let micron = finite_t_tau(1e-6, 0.02525, &p)
        .unwrap()
        .tau_seconds
        .unwrap();
    assert!((micron / 112.887865669824 - 1.0).abs() < 1e-12);
    let cm = finite_t_tau(1e-2, 0.02525, &p)
        .unwrap()
        .tau_seconds
        .unwrap();
    assert!((cm / 1.128878656698241e10 - 1.0).abs() < 1e-12);
}

#[test]
fn thermal_oracle_matches_brackets() {
    let params = PhysParams::electron(0.025);
    let cutoffs = CutoffScheme::new(0.0, 1e-6, 25.0);
    let e = ir_brackets(&params, &cutoffs, HierarchyPolicy::default(), tol()).unwrap();
    let oracle = thermal_bracket_oracle(&params, &cutoffs, 200).unwrap();
    assert!((e.thermal_bracket / oracle - 1.0).abs() < 1e-10);
}

#[test]
fn momentum_and_position_pictures_agree() {
    // exp(−C p²) with C the infrared coefficient; the position profile uses W = C
    let params = PhysParams::electron(0.025);
    let e = ir_brackets(
        &params,
        &CutoffScheme::new(0.0, 1e-6, 25.0),
        HierarchyPolicy::default(),
        tol(),
    )
    .unwrap();
    let p_sq = 1e8;
    let r = form_factor(p_sq, &e).unwrap().r;
    assert!((r / (-e.coefficient_c * p_sq).exp() - 1.0).abs() < 1e-14);
    assert_eq!(
        effective_width_sq(&e, &GaussianPacket::point()),
        e.coefficient_c
    );
}

#[test]
fn hierarchy_errors_surface() {
    let r = ir_brackets(
        &PhysParams::electron(0.0),
        &CutoffScheme::new(0.0, 1.0, 1e5),
        HierarchyPolicy::default(),
        tol(),
    );
    assert!(matches!(r, Err(Error::HierarchyViolation(_))));
}

proptest! {
    #[test]
    fn permutation_identity(a in prop::collection::vec(0.1..10.0f64, 1..=6)) {
        let w = EikonalWeights::new(a, 0.0).unwrap();
        let sum = perm_sum(&w).unwrap();
        let prod = eikonal_product(&w);
        prop_assert!((sum - prod).norm() <= 1e-11 * prod.norm());
    }

    #[test]
    fn colder_or_lower_cutoff_screens_more(t in 1e-3..0.1f64, l in -9.0..-5.0f64) {
        let lambda0 = 10f64.powf(l) * t;
        let params = PhysParams::electron(t);
        let policy = HierarchyPolicy::default();
        let c_at = |lam: f64| ir_brackets(&params, &CutoffScheme::new(0.0, lam, 25.0), policy, tol())
            .unwrap()
            .coefficient_c;
        prop_assert!(c_at(lambda0 / 10.0) > c_at(lambda0));
    }

    #[test]
    fn screening_and_charge_ordered(r in 1e-3..1e3f64, w in 1e-3..1e3f64) {
        let s = screening_factor(r, w).unwrap();
        let q = enclosed_charge_fraction(r, w).unwrap();
        prop_assert!((0.0..=1.0).contains(&q));
        prop_assert!(q <= s + 1e-15);
    }

    #[test]
    fn cutoff_round_trip(tau in 1e-20..1e20f64) {
        let p = PhysParams::electron(0.0);
        let lambda0 = cutoff_from_duration(tau, &p).unwrap();
        prop_assert!((lambda0 * tau / p.hbar_ev_s - 1.0).abs() < 1e-15);
    }
}
