//! Seeded verification suites for the eikonal identities and the smearing
//! kernels, reporting the worst deviation seen for each identity.

use std::f64::consts::PI;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_rational::BigRational;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::eikonal::{
    eikonal_product, multinomial_closed_form, multinomial_sum, perm_sum, random_weights,
    resummed_exponential, resummed_series, richardson_to_zero, taylor_remainder_bound,
    two_term_bracket_detailed, DstTriple, EikonalWeights, MAX_ENUMERATION,
};
use crate::error::{invalid, Result};
use crate::field::{enclosed_charge_fraction, equivalent_charge_density, screening_factor};
use crate::params::FourVector;
use crate::quadrature::{adaptive_integrate, Tolerance};
use crate::smearing::{delta_lambda, delta_star, smeared_denominator, Prescription, SmearKernel};

/// Instances drawn for the permutation identity.
pub const PERMUTATION_INSTANCES: usize = 1000;

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct Check {
    pub name: &'static str,
    pub max_deviation: f64,
    pub tolerance: f64,
    pub passed: bool,
    /// Reported but excluded from the overall verdict.
    pub informational: bool,
}

impl Check {
    fn new(name: &'static str, max_deviation: f64, tolerance: f64) -> Self {
        Self {
            name,
            max_deviation,
            tolerance,
            passed: max_deviation <= tolerance,
            informational: false,
        }
    }

    fn informational(mut self) -> Self {
        self.informational = true;
        self
    }
}

/// True when every gating check passed.
pub fn all_passed(checks: &[Check]) -> bool {
    checks.iter().all(|c| c.passed || c.informational)
}

fn rel(a: Complex64, b: Complex64) -> f64 {
    (a - b).norm() / b.norm()
}

fn weights(a: &[f64], eps: f64) -> EikonalWeights {
    EikonalWeights::new(a.to_vec(), eps).expect("generated weights are valid")
}

/// Worst relative gap between the permutation sum and the product over
/// `instances` random weight sets with n cycling through 2..=n_max.
pub fn permutation_identity_deviation(seed: u64, n_max: usize, instances: usize) -> Result<f64> {
    if !(2..=MAX_ENUMERATION).contains(&n_max) {
        return Err(invalid(
            "n_max",
            format!("must lie in 2..={MAX_ENUMERATION}"),
        ));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut worst = 0.0f64;
    for i in 0..instances {
        let n = 2 + i % (n_max - 1);
        let w = weights(&random_weights(&mut rng, n), 0.0);
        worst = worst.max(rel(perm_sum(&w)?, eikonal_product(&w)));
    }
    Ok(worst)
}

/// Bracket measurements on one weight set, at ε = 1e-6 × smallest partial sum.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct BracketScaling {
    pub m: usize,
    pub epsilon: f64,
    /// |value| / largest single term at that ε.
    pub cancellation: f64,
    /// |value(ε)| / |value(2ε)|.
    pub halving_ratio: f64,
    /// |2 value(ε/2) − value(ε)| / |value(ε)|.
    pub extrapolated: f64,
}

pub fn bracket_scaling(a: &[f64], m: usize) -> Result<BracketScaling> {
    let epsilon = 1e-6 * weights(a, 0.0).min_partial_sum();
    let at = |e: f64| two_term_bracket_detailed(&weights(a, e), m);
    let here = at(epsilon)?;
    let doubled = at(2.0 * epsilon)?;
    let limit = richardson_to_zero(|e| Ok(at(e)?.value), epsilon)?;
    Ok(BracketScaling {
        m,
        epsilon,
        cancellation: here.value.norm() / here.largest_term,
        halving_ratio: here.value.norm() / doubled.value.norm(),
        extrapolated: limit.norm() / here.value.norm(),
    })
}

/// All brackets m = 1..=n for `sets` random weight sets of size 2..=n_max.
pub fn bracket_survey(seed: u64, n_max: usize, sets: usize) -> Result<Vec<BracketScaling>> {
    let n_max = n_max.clamp(2, MAX_ENUMERATION);
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x5eed_b7ac);
    let mut out = Vec::new();
    for i in 0..sets {
        let n = 2 + i % (n_max - 1);
        let a = random_weights(&mut rng, n);
        for m in 1..=n {
            out.push(bracket_scaling(&a, m)?);
        }
    }
    Ok(out)
}

fn random_rational<R: Rng>(rng: &mut R) -> BigRational {
    BigRational::new(
        BigInt::from(rng.random_range(-20i64..=20)),
        BigInt::from(rng.random_range(1i64..=12)),
    )
}

/// Number of random rational triples for which the double sum differs from
/// the closed form, over every order up to `max_order`.
pub fn multinomial_exact_mismatches(seed: u64, triples: usize, max_order: u32) -> usize {
    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0x00a7_10a1);
    let mut mismatches = 0;
    for _ in 0..triples {
        let (a, b, c) = (
            random_rational(&mut rng),
            random_rational(&mut rng),
            random_rational(&mut rng),
        );
        for order in 0..=max_order {
            if multinomial_sum(&a, &b, &c, order) != multinomial_closed_form(&a, &b, &c, order) {
                mismatches += 1;
            }
        }
    }
    mismatches
}

/// Random d's with positive real parts, which keeps d₁₁ + d₂₂ + 2d₁₂ away
/// from zero.
pub fn random_dst<R: Rng>(rng: &mut R) -> DstTriple {
    let mut draw = || Complex64::new(rng.random_range(0.5..1.5), rng.random_range(-0.5..0.5));
    DstTriple::new(draw(), draw(), draw())
}

pub fn eikonal_suite(seed: u64, n_max: usize) -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    checks.push(Check::new(
        "permutation_sum_equals_product",
        permutation_identity_deviation(seed, n_max, PERMUTATION_INSTANCES)?,
        1e-9,
    ));

    let survey = bracket_survey(seed, n_max.min(6), 50)?;
    let worst = |pick: &dyn Fn(&BracketScaling) -> f64, m_filter: &dyn Fn(usize) -> bool| {
        survey
            .iter()
            .filter(|b| m_filter(b.m))
            .map(pick)
            .fold(0.0f64, f64::max)
    };
    checks.push(Check::new(
        "single_vertex_bracket_linear_in_epsilon",
        worst(&|b| (b.halving_ratio - 0.5).abs(), &|m| m == 1),
        1e-3,
    ));
    checks.push(Check::new(
        "multi_vertex_bracket_linear_in_epsilon",
        worst(&|b| (b.halving_ratio - 0.5).abs(), &|m| m > 1),
        1e-3,
    ));
    checks.push(Check::new(
        "bracket_vanishes_as_epsilon_to_zero",
        worst(&|b| b.extrapolated, &|_| true),
        1e-4,
    ));
    checks.push(
        Check::new(
            "multi_vertex_bracket_cancels_at_fixed_epsilon",
            worst(&|b| b.cancellation, &|m| m > 1),
            1e-12,
        )
        .informational(),
    );

    checks.push(Check::new(
        "multinomial_exact_rational",
        multinomial_exact_mismatches(seed, 20, 10) as f64,
        0.0,
    ));

    let mut rng = ChaCha8Rng::seed_from_u64(seed ^ 0xd57);
    let mut closed_gap = 0.0f64;
    let mut symmetry_gap = 0.0f64;
    let mut remainder_ratio = 0.0f64;
    for _ in 0..100 {
        let d = random_dst(&mut rng);
        let sum = multinomial_sum(&d.d11, &d.d22, &d.d12, 5);
        let closed = multinomial_closed_form(&d.d11, &d.d22, &d.d12, 5);
        closed_gap = closed_gap.max(rel(sum, closed));
        let e_sq = rng.random_range(0.1..2.0);
        let series = resummed_series(&d, e_sq, 20)?;
        symmetry_gap = symmetry_gap.max(rel(resummed_series(&d.swapped(), e_sq, 20)?, series));
        let n_max = rng.random_range(3..=20);
        let truncated = resummed_series(&d, e_sq, n_max)?;
        let x = 0.5 * e_sq * d.combination();
        let err = (truncated - resummed_exponential(&d, e_sq)).norm();
        // rounding floor for bounds below double resolution
        let allowed = taylor_remainder_bound(x, n_max) + 1e-14 * x.norm().exp();
        remainder_ratio = remainder_ratio.max(err / allowed);
    }
    checks.push(Check::new(
        "multinomial_closed_form_order_5",
        closed_gap,
        1e-12,
    ));
    checks.push(Check::new(
        "series_symmetric_under_leg_swap",
        symmetry_gap,
        1e-13,
    ));
    checks.push(Check::new(
        "series_within_taylor_remainder",
        remainder_ratio,
        1.0,
    ));

    // e²(d₁₁ + d₂₂ + 2d₁₂)/2 = −1
    let d = DstTriple::real(-0.5, -0.5, -0.5);
    let series = resummed_series(&d, 1.0, 20)?;
    checks.push(Check::new(
        "series_resums_to_exponential",
        (series.re / (-1f64).exp() - 1.0).abs().max(series.im.abs()),
        1e-12,
    ));
    Ok(checks)
}

const REST: FourVector = FourVector::at_rest(1.0);

fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> Result<f64> {
    Ok(adaptive_integrate(f, a, b, Tolerance::relative(1e-13))?.value)
}

/// ∫ d⁴w Δ_λ(w) as 2π² ∫ r³ Δ_λ(r) dr, using only that the kernel depends
/// on the Euclidean length of w.
pub fn delta_lambda_normalization(kernel: &SmearKernel) -> Result<f64> {
    let l = kernel.lambda();
    let radial = quad(
        |r| r * r * r * delta_lambda(&FourVector::new(r, 0.0, 0.0, 0.0), kernel),
        0.0,
        12.0 * l,
    )?;
    Ok(2.0 * PI * PI * radial)
}

/// The defining convolution (1/16) ∫ d⁴ξ Δ_λ((w−ξ)/2) Δ_λ((w+ξ)/2),
/// integrated one axis at a time (the kernel factorises over axes).
pub fn delta_star_convolution(w: &FourVector, kernel: &SmearKernel) -> Result<f64> {
    let l = kernel.lambda();
    let phi = |u: f64| (-(u * u) / (l * l)).exp() / (PI.sqrt() * l);
    let axis = |wi: f64| {
        quad(
            |xi| phi((wi - xi) / 2.0) * phi((wi + xi) / 2.0),
            wi.abs() - 30.0 * l,
            wi.abs() + 30.0 * l,
        )
    };
    Ok(axis(w.t)? * axis(w.x)? * axis(w.y)? * axis(w.z)? / 16.0)
}

/// P∫ g_λ(u − k₀)/u du by symmetric excision of (−δ, δ) and one Richardson
/// step δ → 0.
pub fn principal_value_oracle(k0: f64, kernel: &SmearKernel) -> Result<f64> {
    let l = kernel.lambda();
    let folded = |u: f64| (kernel.marginal(u - k0) - kernel.marginal(-u - k0)) / u;
    let hi = k0.abs() + 40.0 * l;
    let delta = 1e-4 * l;
    Ok(2.0 * quad(folded, 0.5 * delta, hi)? - quad(folded, delta, hi)?)
}

/// Relative deviation of Re smeared_denominator from 1/(m k₀).
pub fn unsmeared_limit_deviation(k0: f64, lambda: f64) -> Result<f64> {
    let v = smeared_denominator(
        &FourVector::new(k0, 0.0, 0.0, 0.0),
        &REST,
        &SmearKernel::new(lambda)?,
        Prescription::Plus,
    )?;
    Ok(((v - Complex64::new(1.0 / k0, 0.0)) * k0).norm())
}

/// |∫ φ(k) D_λ(k) dk − ∫ φ(k)/(k + i0) dk| for a smooth bump φ on (−1, 1).
pub fn distributional_limit_gap(lambda: f64) -> Result<f64> {
    let bump = |s: f64| {
        if s.abs() < 1.0 {
            (-1.0 / (1.0 - s * s)).exp()
        } else {
            0.0
        }
    };
    let test_fn = |k: f64| (1.0 + k) * bump(k);
    let exact = Complex64::new(quad(|s| 2.0 * bump(s), 0.0, 1.0)?, -PI * test_fn(0.0));
    let kernel = SmearKernel::new(lambda)?;
    let part = |pick: fn(Complex64) -> f64| {
        quad(
            |k| {
                let v = smeared_denominator(
                    &FourVector::new(k, 0.0, 0.0, 0.0),
                    &REST,
                    &kernel,
                    Prescription::Plus,
                )
                .expect("rest frame");
                test_fn(k) * pick(v)
            },
            -1.0,
            1.0,
        )
    };
    let smeared = Complex64::new(part(|c| c.re)?, part(|c| c.im)?);
    Ok((smeared - exact).norm())
}

pub fn smearing_suite() -> Result<Vec<Check>> {
    let mut checks = Vec::new();
    let mut norm_gap = 0.0f64;
    for l in [0.5, 1.0, 2.0] {
        norm_gap = norm_gap.max((delta_lambda_normalization(&SmearKernel::new(l)?)? - 1.0).abs());
    }
    checks.push(Check::new("delta_lambda_normalized", norm_gap, 1e-8));

    let unit = SmearKernel::new(1.0)?;
    let origin = FourVector::default();
    let closed = delta_star(&origin, &unit);
    let at_origin = (closed / delta_star_convolution(&origin, &unit)? - 1.0)
        .abs()
        .max((closed * 4.0 * PI * PI - 1.0).abs());
    checks.push(Check::new(
        "delta_star_origin_matches_convolution",
        at_origin,
        1e-8,
    ));

    let k = SmearKernel::new(0.7)?;
    let mut grid_gap = 0.0f64;
    for i in 0..10 {
        let s = 0.3 * i as f64;
        let w = FourVector::new(s, -0.5 * s, 0.2 * s, 0.1 * i as f64 - 0.4);
        grid_gap = grid_gap.max((delta_star(&w, &k) / delta_star_convolution(&w, &k)? - 1.0).abs());
    }
    checks.push(Check::new(
        "delta_star_matches_convolution_on_grid",
        grid_gap,
        1e-6,
    ));

    let mut pv_gap = 0.0f64;
    let mut conj_gap = 0.0f64;
    for (k0, l) in [
        (0.3, 1.0),
        (-1.2, 0.8),
        (2.0, 0.5),
        (5.0, 1.0),
        (0.05, 0.02),
    ] {
        let kernel = SmearKernel::new(l)?;
        let kv = FourVector::new(k0, 0.0, 0.0, 0.0);
        let plus = smeared_denominator(&kv, &REST, &kernel, Prescription::Plus)?;
        let minus = smeared_denominator(&kv, &REST, &kernel, Prescription::Minus)?;
        pv_gap = pv_gap.max((plus.re / principal_value_oracle(k0, &kernel)? - 1.0).abs());
        conj_gap = conj_gap.max((minus - plus.conj()).norm() / plus.norm());
    }
    checks.push(Check::new(
        "denominator_matches_principal_value",
        pv_gap,
        1e-8,
    ));
    checks.push(Check::new("denominator_conjugation", conj_gap, 1e-15));

    checks.push(Check::new(
        "denominator_unsmeared_limit_at_k0_over_100",
        unsmeared_limit_deviation(5.0, 0.05)?,
        1e-4,
    ));
    checks.push(
        Check::new(
            "denominator_unsmeared_limit_at_k0_over_50",
            unsmeared_limit_deviation(5.0, 0.1)?,
            1e-4,
        )
        .informational(),
    );
    checks.push(Check::new(
        "denominator_distributional_limit",
        distributional_limit_gap(0.01)?,
        1e-4,
    ));
    Ok(checks)
}

/// (r, W) pairs spanning the core, the shoulder and the far tail.
pub const SCREENING_ORACLE_POINTS: [(f64, f64); 5] = [
    (0.3, 1.0),
    (2.0, 1.0),
    (1.0, 0.04),
    (7.5, 3.0),
    (40.0, 90.0),
];

/// S(r) straight from the radial Fourier transform of e^{−W p²}/p²:
/// (2/π) ∫₀^∞ sin(pr)/p · e^{−W p²} dp, truncated where e^{−W p²} < e^{−45}.
pub fn fourier_oracle(r: f64, w: f64) -> Result<f64> {
    let p_max = (45.0 / w).sqrt();
    let f = |p: f64| {
        if p == 0.0 {
            r
        } else {
            (p * r).sin() / p * (-w * p * p).exp()
        }
    };
    Ok(2.0 / PI * adaptive_integrate(f, 0.0, p_max, Tolerance::new(1e-13, 1e-16)?)?.value)
}

/// Q(r)/e as ∫₀^r 4π s² ρ(s) ds over the Gaussian charge density.
pub fn ball_oracle(r: f64, w: f64) -> Result<f64> {
    Ok(adaptive_integrate(
        |s| 4.0 * PI * s * s * equivalent_charge_density(s, w),
        0.0,
        r,
        Tolerance::relative(1e-14),
    )?
    .value)
}

/// Worst relative gaps of S against the Fourier oracle and of Q/e against
/// the ball oracle.
pub fn screening_oracle_gaps(points: &[(f64, f64)]) -> Result<(f64, f64)> {
    let (mut s_gap, mut q_gap) = (0.0f64, 0.0f64);
    for &(r, w) in points {
        s_gap = s_gap.max((screening_factor(r, w)? / fourier_oracle(r, w)? - 1.0).abs());
        q_gap = q_gap.max((enclosed_charge_fraction(r, w)? / ball_oracle(r, w)? - 1.0).abs());
    }
    Ok((s_gap, q_gap))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn suites_pass_their_gating_checks() {
        let e = eikonal_suite(42, 7).unwrap();
        let s = smearing_suite().unwrap();
        for c in e.iter().chain(&s) {
            assert!(c.passed || c.informational, "{c:?}");
        }
        assert!(all_passed(&e) && all_passed(&s));
    }

    #[test]
    fn fixed_epsilon_cancellation_is_not_machine_level() {
        // the multi-vertex bracket is O(ε), not zero, at finite ε
        let e = eikonal_suite(42, 4).unwrap();
        let c = e
            .iter()
            .find(|c| c.name == "multi_vertex_bracket_cancels_at_fixed_epsilon")
            .unwrap();
        assert!(!c.passed && c.informational);
    }

    #[test]
    fn suites_are_reproducible() {
        assert_eq!(eikonal_suite(7, 5).unwrap(), eikonal_suite(7, 5).unwrap());
    }

    #[test]
    fn radial_normalization() {
        for l in [0.5, 1.0, 2.0] {
            let k = SmearKernel::new(l).unwrap();
            assert!((delta_lambda_normalization(&k).unwrap() - 1.0).abs() < 1e-10);
        }
    }

    #[test]
    fn n_max_validated() {
        assert!(permutation_identity_deviation(1, 9, 10).is_err());
        assert!(permutation_identity_deviation(1, 1, 10).is_err());
    }
}
