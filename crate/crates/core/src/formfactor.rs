//! The infrared exponent C and the resummed form factor R(p) = exp(−C p²).
//!
//! Vacuum and thermal soft photons both enter through the master integrand
//! (1 + 2n(k))/k on λ₀ < k < Λ, with n the Bose–Einstein occupation:
//!
//! ```text
//! C = α/(3π m²) · [ ln(Λ/λ₀) + ∫ 2n(k) dk/k ]
//! ```

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::params::{validate_hierarchy, CutoffScheme, HierarchyPolicy, PhysParams};
use crate::quadrature::{adaptive_integrate, adaptive_integrate_log, exp_integral_e1, Tolerance};

/// Occupation factors below e^{−700} are dropped from the thermal integral.
const BOLTZMANN_CUTOFF: f64 = 700.0;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct IRExponent {
    /// C in eV⁻².
    pub coefficient_c: f64,
    /// ln(Λ/λ₀).
    pub vacuum_bracket: f64,
    /// ∫ dk/k by quadrature in k.
    pub vacuum_bracket_quadrature: f64,
    /// ∫ 2n(k) dk/k; exactly zero at T = 0.
    pub thermal_bracket: f64,
    pub cutoffs: CutoffScheme,
    pub params: PhysParams,
}

impl IRExponent {
    pub fn total_bracket(&self) -> f64 {
        self.vacuum_bracket + self.thermal_bracket
    }
}

/// α/(3π m²)
pub fn exponent_prefactor(params: &PhysParams) -> f64 {
    params.alpha / (3.0 * PI * params.mass_ev * params.mass_ev)
}

/// Large-cutoff-ratio form of the total bracket at T > 0: 2T/λ₀ + ln(Λ/T).
pub fn thermal_asymptote(temperature: f64, lambda0: f64, lambda_soft: f64) -> f64 {
    2.0 * temperature / lambda0 + (lambda_soft / temperature).ln()
}

/// ∫_{λ₀}^{Λ} dk/k evaluated as a plain quadrature in k.
pub fn vacuum_bracket_quadrature(lambda0: f64, lambda_soft: f64, tol: Tolerance) -> Result<f64> {
    Ok(adaptive_integrate(|k| 1.0 / k, lambda0, lambda_soft, tol)?.value)
}

/// ∫_{λ₀}^{Λ} 2/(e^{k/T} − 1) dk/k by quadrature in ln k. No hierarchy is
/// imposed on the three scales.
pub fn thermal_bracket_quadrature(
    temperature: f64,
    lambda0: f64,
    lambda_soft: f64,
    tol: Tolerance,
) -> Result<f64> {
    if temperature == 0.0 {
        return Ok(0.0);
    }
    if !(temperature > 0.0) {
        return Err(invalid("temperature_ev", "must be non-negative"));
    }
    if !(lambda0 > 0.0 && lambda0 < lambda_soft) {
        return Err(invalid("lambda0_ir", "need 0 < λ₀ < Λ"));
    }
    let upper = lambda_soft.min(BOLTZMANN_CUTOFF * temperature);
    if upper <= lambda0 {
        return Ok(0.0);
    }
    let r = adaptive_integrate_log(
        |k| 2.0 / ((k / temperature).exp_m1() * k),
        lambda0,
        upper,
        tol,
    )?;
    Ok(r.value)
}

/// Vacuum and thermal brackets and the coefficient C.
///
/// The vacuum bracket is computed both analytically and by quadrature; a
/// disagreement beyond `tol` is reported as non-convergence.
pub fn ir_brackets(
    params: &PhysParams,
    cutoffs: &CutoffScheme,
    policy: HierarchyPolicy,
    tol: Tolerance,
) -> Result<IRExponent> {
    validate_hierarchy(params, cutoffs, policy)?;
    let (lambda0, lambda_soft) = (cutoffs.lambda0_ir, cutoffs.lambda_soft);
    let vacuum_bracket = (lambda_soft / lambda0).ln();
    let quadrature = adaptive_integrate(|k| 1.0 / k, lambda0, lambda_soft, tol)?;
    if (quadrature.value - vacuum_bracket).abs() > tol.target(vacuum_bracket) {
        return Err(Error::NonConvergence {
            value: quadrature.value,
            error_estimate: (quadrature.value - vacuum_bracket).abs(),
            evaluations: quadrature.evaluations,
        });
    }
    let thermal_bracket =
        thermal_bracket_quadrature(params.temperature_ev, lambda0, lambda_soft, tol)?;
    Ok(IRExponent {
        coefficient_c: exponent_prefactor(params) * (vacuum_bracket + thermal_bracket),
        vacuum_bracket,
        vacuum_bracket_quadrature: quadrature.value,
        thermal_bracket,
        cutoffs: *cutoffs,
        params: *params,
    })
}

// ∫_J^∞ E1(j x) dj
fn e1_integral_tail(x: f64, j: f64) -> Result<f64> {
    Ok(((-j * x).exp() - j * x * exp_integral_e1(j * x)?) / x)
}

// Euler–Maclaurin estimate of Σ_{j>J} E1(j x).
fn e1_sum_tail(x: f64, j: f64) -> Result<f64> {
    let e = (-j * x).exp();
    let g = exp_integral_e1(j * x)?;
    let g1 = -e / j;
    let g3 = -e * (x * x / j + 2.0 * x / (j * j) + 2.0 / (j * j * j));
    Ok(e1_integral_tail(x, j)? - 0.5 * g - g1 / 12.0 + g3 / 720.0)
}

/// Independent evaluation of the thermal bracket from the expansion
/// 2n(k) = 2Σ_j e^{−jk/T}, which integrates term by term to
/// 2Σ_j [E₁(jλ₀/T) − E₁(jΛ/T)].
///
/// The first `terms` terms are summed explicitly and the remainder is
/// added through an Euler–Maclaurin tail.
pub fn thermal_bracket_oracle(
    params: &PhysParams,
    cutoffs: &CutoffScheme,
    terms: u32,
) -> Result<f64> {
    let t = params.temperature_ev;
    if !(t > 0.0) {
        return Err(Error::Domain(format!(
            "the thermal oracle needs T > 0 (got {t})"
        )));
    }
    if terms == 0 {
        return Err(invalid("terms", "must be positive"));
    }
    let x0 = cutoffs.lambda0_ir / t;
    let x1 = cutoffs.lambda_soft / t;
    let mut sum = 0.0;
    for j in 1..=terms {
        let j = j as f64;
        sum += exp_integral_e1(j * x0)? - exp_integral_e1(j * x1)?;
    }
    let big_j = terms as f64;
    sum += e1_sum_tail(x0, big_j)? - e1_sum_tail(x1, big_j)?;
    Ok(2.0 * sum)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct FormFactorValue {
    #[serde(rename = "R")]
    pub r: f64,
    pub p_sq: f64,
    pub exponent: IRExponent,
}

/// R = exp(−C p²) for |p| ≤ m/10.
pub fn form_factor(p_sq: f64, exponent: &IRExponent) -> Result<FormFactorValue> {
    if !(p_sq >= 0.0) {
        return Err(invalid("p_sq", "must be non-negative"));
    }
    let limit = (0.1 * exponent.params.mass_ev).powi(2);
    if p_sq > limit {
        return Err(Error::NonrelativisticViolation { p_sq, limit });
    }
    Ok(FormFactorValue {
        r: (-exponent.coefficient_c * p_sq).exp(),
        p_sq,
        exponent: *exponent,
    })
}

/// Factor multiplying the density-matrix element ρ(q, q + p). Independent
/// of q at this order.
pub fn effective_rho_suppression(p: [f64; 3], exponent: &IRExponent) -> Result<f64> {
    let p_sq = p.iter().map(|c| c * c).sum();
    Ok(form_factor(p_sq, exponent)?.r)
}
