//! Gaussian smearing of vertex delta functions and the smeared eikonal
//! denominator.
//!
//! The kernel uses the all-plus quadratic form `w₀² + |w|²` in its exponent,
//! so it is not Lorentz invariant. That choice is kept exactly.

use std::f64::consts::PI;

use num_complex::Complex64;
use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::params::FourVector;
use crate::quadrature::dawson;

const SQRT_PI: f64 = 1.772_453_850_905_516_027_298_167_483_341_145_2;

/// Gaussian smearing kernel of width `lambda` (eV).
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct SmearKernel {
    lambda: f64,
}

impl SmearKernel {
    pub fn new(lambda: f64) -> Result<Self> {
        if !(lambda > 0.0 && lambda.is_finite()) {
            return Err(invalid("lambda", "smearing width must be positive"));
        }
        Ok(Self { lambda })
    }

    pub fn lambda(&self) -> f64 {
        self.lambda
    }

    /// One-dimensional marginal `e^{−u²/λ²} / (√π λ)`.
    pub fn marginal(&self, u: f64) -> f64 {
        let l = self.lambda;
        (-(u * u) / (l * l)).exp() / (SQRT_PI * l)
    }
}

/// Which side of the real axis an `i0` pole is displaced to.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Prescription {
    /// `1/(x + i0)`
    Plus,
    /// `1/(x − i0)`
    Minus,
}

impl Prescription {
    pub fn sign(self) -> f64 {
        match self {
            Prescription::Plus => 1.0,
            Prescription::Minus => -1.0,
        }
    }
}

/// Finite-ε stand-in for `±i0`.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct EpsilonPrescription {
    pub sign: Prescription,
    pub epsilon: f64,
}

impl EpsilonPrescription {
    pub fn new(sign: Prescription, epsilon: f64) -> Result<Self> {
        if !(epsilon > 0.0) {
            return Err(invalid("epsilon", "must be positive"));
        }
        Ok(Self { sign, epsilon })
    }

    /// `1 / (x ± iε)`
    pub fn propagator(&self, x: f64) -> Complex64 {
        Complex64::new(x, self.sign.sign() * self.epsilon).inv()
    }
}

/// Δ_λ(w) = exp(−(w₀² + |w|²)/λ²) / (π² λ⁴).
pub fn delta_lambda(w: &FourVector, kernel: &SmearKernel) -> f64 {
    let l2 = kernel.lambda * kernel.lambda;
    (-w.euclidean_norm_sq() / l2).exp() / (PI * PI * l2 * l2)
}

/// The two-point counterterm kernel
/// Δ*_λ(w) = (1/16) ∫ d⁴ξ Δ_λ((w−ξ)/2) Δ_λ((w+ξ)/2).
///
/// The exponents add to −(|w|² + |ξ|²)/(2λ²), so the ξ integral is a plain
/// Gaussian and Δ*_λ is Δ with λ² doubled:
/// exp(−|w|²/(2λ²)) / (4π² λ⁴).
pub fn delta_star(w: &FourVector, kernel: &SmearKernel) -> f64 {
    let l2 = kernel.lambda * kernel.lambda;
    (-w.euclidean_norm_sq() / (2.0 * l2)).exp() / (4.0 * PI * PI * l2 * l2)
}

/// ∫ d⁴w Δ_λ(w − k) / (w·q ± i0) for an electron at rest, q = (m, 0⃗).
///
/// Only w₀ enters the denominator, so the spatial integrals give one and
/// what remains is the 1D Gaussian marginal g_λ against 1/(m w₀ ± i0):
///
/// ```text
/// (1/m) [ P∫ g_λ(u − k₀)/u du ∓ iπ g_λ(k₀) ] = (1/m) [ (2/λ) D(k₀/λ) ∓ iπ g_λ(k₀) ]
/// ```
///
/// with D Dawson's integral (the Hilbert transform of a Gaussian).
pub fn smeared_denominator(
    k: &FourVector,
    q: &FourVector,
    kernel: &SmearKernel,
    sign: Prescription,
) -> Result<Complex64> {
    if q.spatial_norm_sq() != 0.0 || !(q.t > 0.0) {
        return Err(Error::RestFrameRequired);
    }
    let m = q.t;
    let l = kernel.lambda;
    let principal = 2.0 / l * dawson(k.t / l);
    let delta = PI * kernel.marginal(k.t);
    Ok(Complex64::new(principal, -sign.sign() * delta) / m)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::quadrature::{adaptive_integrate, Tolerance};
    use proptest::prelude::*;

    fn kernel(l: f64) -> SmearKernel {
        SmearKernel::new(l).unwrap()
    }

    // Independent 1D factor of the kernel, written out from the definition.
    fn phi(u: f64, l: f64) -> f64 {
        (-(u * u) / (l * l)).exp() / (PI.sqrt() * l)
    }

    fn quad(f: impl Fn(f64) -> f64, a: f64, b: f64) -> f64 {
        adaptive_integrate(f, a, b, Tolerance::relative(1e-13))
            .unwrap()
            .value
    }

    // (1/16) ∫ d⁴ξ Δ((w−ξ)/2) Δ((w+ξ)/2), factorised over the four axes.
    fn delta_star_oracle(w: &FourVector, l: f64) -> f64 {
        let axis = |wi: f64| {
            quad(
                |xi| phi((wi - xi) / 2.0, l) * phi((wi + xi) / 2.0, l),
                -30.0 * l,
                30.0 * l,
            )
        };
        axis(w.t) * axis(w.x) * axis(w.y) * axis(w.z) / 16.0
    }

    // Normalisation through four 1D quadratures along the axes of `f`.
    fn normalization(f: impl Fn(&FourVector) -> f64, l: f64) -> f64 {
        let origin = f(&FourVector::default());
        let axes = [
            FourVector::new(1.0, 0.0, 0.0, 0.0),
            FourVector::new(0.0, 1.0, 0.0, 0.0),
            FourVector::new(0.0, 0.0, 1.0, 0.0),
            FourVector::new(0.0, 0.0, 0.0, 1.0),
        ];
        axes.iter()
            .map(|e| quad(|u| f(&(u * *e)) / origin, -20.0 * l, 20.0 * l))
            .product::<f64>()
            * origin
    }

    #[test]
    fn delta_lambda_at_origin() {
        let v = delta_lambda(&FourVector::default(), &kernel(1.0));
        assert!((v - 1.0 / (PI * PI)).abs() < 1e-15);
        assert!((v - 0.101_321_183_642_337_8).abs() < 1e-15);
    }

    #[test]
    fn delta_lambda_normalized() {
        for l in [0.5, 1.0, 2.0] {
            let n = normalization(|w| delta_lambda(w, &kernel(l)), l);
            assert!((n - 1.0).abs() < 1e-8, "lambda={l}: {n}");
        }
    }

    #[test]
    fn delta_lambda_concentrates() {
        let w = FourVector::new(0.5, 0.5, 0.5, 0.5);
        assert!((w.euclidean_norm_sq() - 1.0).abs() < 1e-15);
        assert!(delta_lambda(&w, &kernel(0.1)) < 1e-40);
    }

    #[test]
    fn delta_lambda_uses_euclidean_form() {
        // lightlike w has zero Minkowski square but must still be suppressed
        let w = FourVector::new(1.0, 1.0, 0.0, 0.0);
        let k = kernel(1.0);
        let ratio = delta_lambda(&w, &k) / delta_lambda(&FourVector::default(), &k);
        assert!((ratio - (-2.0f64).exp()).abs() < 1e-15);
    }

    #[test]
    fn delta_star_at_origin() {
        let k = kernel(1.0);
        let closed = delta_star(&FourVector::default(), &k);
        assert!((closed - 0.025_330_295_910_584_444).abs() < 1e-15);
        let oracle = delta_star_oracle(&FourVector::default(), 1.0);
        assert!((closed / oracle - 1.0).abs() < 1e-8);
    }

    #[test]
    fn delta_star_matches_convolution_on_grid() {
        let l = 0.7;
        let k = kernel(l);
        for i in 0..10 {
            let s = 0.3 * i as f64;
            let w = FourVector::new(s, -0.5 * s, 0.2 * s, 0.1 * i as f64 - 0.4);
            let oracle = delta_star_oracle(&w, l);
            let closed = delta_star(&w, &k);
            assert!((closed / oracle - 1.0).abs() < 1e-6, "w={w:?}");
        }
    }

    #[test]
    fn delta_star_normalized() {
        for l in [0.5, 1.0, 2.0] {
            let n = normalization(|w| delta_star(w, &kernel(l)), l);
            assert!((n - 1.0).abs() < 1e-8);
        }
    }

    #[test]
    fn kernel_rejects_nonpositive_width() {
        assert!(SmearKernel::new(0.0).is_err());
        assert!(SmearKernel::new(-1.0).is_err());
        assert!(EpsilonPrescription::new(Prescription::Plus, 0.0).is_err());
    }

    #[test]
    fn epsilon_propagator() {
        let p = EpsilonPrescription::new(Prescription::Minus, 0.5).unwrap();
        let v = p.propagator(2.0);
        // 1/(2 - 0.5i) = (2 + 0.5i)/4.25
        assert!((v - Complex64::new(2.0 / 4.25, 0.5 / 4.25)).norm() < 1e-15);
    }

    const REST: FourVector = FourVector::at_rest(1.0);

    // P∫ g(u - k0)/u du by symmetric excision of (-δ, δ), folded onto
    // u > δ, with one Richardson step δ → 0.
    fn principal_value_oracle(k0: f64, l: f64) -> f64 {
        let folded = |u: f64| (phi(u - k0, l) - phi(-u - k0, l)) / u;
        let hi = k0.abs() + 40.0 * l;
        let excised = |delta: f64| quad(folded, delta, hi);
        let delta = 1e-4 * l;
        2.0 * excised(delta / 2.0) - excised(delta)
    }

    #[test]
    fn denominator_at_zero_energy() {
        let v = smeared_denominator(
            &FourVector::default(),
            &REST,
            &kernel(1.0),
            Prescription::Plus,
        )
        .unwrap();
        assert!(v.re.abs() < 1e-15);
        assert!((v.im + PI.sqrt()).abs() < 1e-14);
        assert!(principal_value_oracle(0.0, 1.0).abs() < 1e-12);
    }

    #[test]
    fn denominator_matches_principal_value_oracle() {
        for (k0, l) in [
            (0.3, 1.0),
            (-1.2, 0.8),
            (2.0, 0.5),
            (5.0, 1.0),
            (0.05, 0.02),
        ] {
            let k = FourVector::new(k0, 0.3, 0.0, -0.2);
            let v = smeared_denominator(&k, &REST, &kernel(l), Prescription::Plus).unwrap();
            let pv = principal_value_oracle(k0, l);
            assert!(
                (v.re / pv - 1.0).abs() < 1e-8,
                "k0={k0} l={l}: {} vs {pv}",
                v.re
            );
            assert!((v.im + PI * phi(k0, l)).abs() < 1e-12);
        }
    }

    #[test]
    fn denominator_scales_with_mass() {
        let k = FourVector::new(0.7, 0.0, 0.0, 0.0);
        let a = smeared_denominator(&k, &REST, &kernel(0.3), Prescription::Plus).unwrap();
        let b = smeared_denominator(
            &k,
            &FourVector::at_rest(4.0),
            &kernel(0.3),
            Prescription::Plus,
        )
        .unwrap();
        assert!((a / 4.0 - b).norm() < 1e-15);
    }

    #[test]
    fn denominator_conjugation() {
        for k0 in [-2.0, -0.1, 0.0, 0.4, 3.0] {
            let k = FourVector::new(k0, 0.0, 0.0, 0.0);
            let plus = smeared_denominator(&k, &REST, &kernel(0.6), Prescription::Plus).unwrap();
            let minus = smeared_denominator(&k, &REST, &kernel(0.6), Prescription::Minus).unwrap();
            assert!((minus - plus.conj()).norm() < 1e-15);
            // same statement through the oracle
            let pv = principal_value_oracle(k0, 0.6);
            assert!((minus.re - pv).abs() < 1e-8 * pv.abs().max(1.0));
            assert!((minus.im - PI * phi(k0, 0.6)).abs() < 1e-12);
        }
    }

    #[test]
    fn denominator_requires_rest_frame() {
        let moving = FourVector::new(1.0, 0.1, 0.0, 0.0);
        let k = FourVector::default();
        assert_eq!(
            smeared_denominator(&k, &moving, &kernel(1.0), Prescription::Plus),
            Err(Error::RestFrameRequired)
        );
    }

    #[test]
    fn denominator_unsmeared_limit() {
        // Re = (1/k0)(1 + λ²/(2k0²) + ...), the Gaussian variance being λ²/2.
        let k0 = 5.0;
        let k = FourVector::new(k0, 0.0, 0.0, 0.0);
        let deviation = |l: f64| {
            let v = smeared_denominator(&k, &REST, &kernel(l), Prescription::Plus).unwrap();
            assert!(v.im.abs() < 1e-300);
            v.re * k0 - 1.0
        };
        // 2·50·D(50) − 1, evaluated independently at 30 digits
        let at_50 = deviation(k0 / 50.0);
        assert!((at_50 - 2.001_201_201_683_03e-4).abs() < 1e-12, "{at_50}");
        assert!(deviation(k0 / 100.0) < 1e-4);
        assert!(deviation(k0 / 1000.0) < 1e-6);
    }

    #[test]
    fn denominator_distributional_limit() {
        // Smooth bump supported on (-1, 1), deliberately not even.
        let bump = |s: f64| {
            if s.abs() < 1.0 {
                (-1.0 / (1.0 - s * s)).exp()
            } else {
                0.0
            }
        };
        let test_fn = |k: f64| (1.0 + k) * bump(k);
        // ∫ φ(k)/(k + i0) dk = ∫₀¹ (φ(k) − φ(−k))/k dk − iπ φ(0)
        let exact_re = quad(|s| 2.0 * bump(s), 0.0, 1.0);
        let exact_im = -PI * test_fn(0.0);
        let l = 1.0 / 100.0;
        let kern = kernel(l);
        let smeared = |part: fn(Complex64) -> f64| {
            quad(
                |k| {
                    let v = smeared_denominator(
                        &FourVector::new(k, 0.0, 0.0, 0.0),
                        &REST,
                        &kern,
                        Prescription::Plus,
                    )
                    .unwrap();
                    test_fn(k) * part(v)
                },
                -1.0,
                1.0,
            )
        };
        let re = smeared(|c| c.re);
        let im = smeared(|c| c.im);
        assert!((re - exact_re).abs() < 1e-4, "{re} vs {exact_re}");
        assert!((im - exact_im).abs() < 1e-4, "{im} vs {exact_im}");
    }

    fn vec4() -> impl Strategy<Value = FourVector> {
        (-3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64, -3.0..3.0f64)
            .prop_map(|(t, x, y, z)| FourVector::new(t, x, y, z))
    }

    proptest! {
        #[test]
        fn kernels_are_even(w in vec4(), l in 0.2..3.0f64) {
            let k = kernel(l);
            prop_assert_eq!(delta_lambda(&w, &k), delta_lambda(&-w, &k));
            prop_assert_eq!(delta_star(&w, &k), delta_star(&-w, &k));
        }

        #[test]
        fn star_is_doubled_variance(w in vec4(), l in 0.2..3.0f64) {
            // Δ*_λ = Δ_{√2 λ}
            let a = delta_star(&w, &kernel(l));
            let b = delta_lambda(&w, &kernel(std::f64::consts::SQRT_2 * l));
            prop_assert!((a - b).abs() <= 1e-13 * a.abs().max(1e-300));
        }
    }
}
