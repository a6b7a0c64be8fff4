//! Effective electrostatic potential of a Gaussian electron packet.
//!
//! A Gaussian momentum suppression exp(−W p²) turns the Coulomb potential
//! e/4πr into (e/4πr)·S(r) with S(r) = erf(r/2√W). The packet width and the
//! infrared exponent add: W = C + a²/2.

use std::f64::consts::PI;

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::formfactor::{ir_brackets, IRExponent};
use crate::params::{CutoffScheme, HierarchyPolicy, PhysParams};
use crate::quadrature::{erf, Tolerance};

const FRAC_2_SQRT_PI: f64 = std::f64::consts::FRAC_2_SQRT_PI;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct GaussianPacket {
    /// Packet center, eV⁻¹.
    pub center_x0: [f64; 3],
    /// Position-space rms width a, eV⁻¹. Zero is a point charge.
    pub width_a: f64,
}

impl Default for GaussianPacket {
    fn default() -> Self {
        Self::point()
    }
}

impl GaussianPacket {
    pub fn new(center_x0: [f64; 3], width_a: f64) -> Result<Self> {
        if !(width_a >= 0.0 && width_a.is_finite()) {
            return Err(invalid("a", "width must be finite and non-negative"));
        }
        if center_x0.iter().any(|c| !c.is_finite()) {
            return Err(invalid("x0", "center must be finite"));
        }
        Ok(Self { center_x0, width_a })
    }

    pub fn point() -> Self {
        Self {
            center_x0: [0.0; 3],
            width_a: 0.0,
        }
    }

    /// F(p) = exp(−a² |p|²/2).
    pub fn momentum_form_factor(&self, p_sq: f64) -> f64 {
        (-0.5 * self.width_a * self.width_a * p_sq).exp()
    }

    /// Contribution a²/2 to the effective width.
    pub fn width_sq_contribution(&self) -> f64 {
        0.5 * self.width_a * self.width_a
    }
}

/// W = C + a²/2.
pub fn effective_width_sq(exponent: &IRExponent, packet: &GaussianPacket) -> f64 {
    exponent.coefficient_c + packet.width_sq_contribution()
}

fn check_domain(r: f64, w: f64) -> Result<()> {
    if !(r > 0.0) {
        return Err(Error::Domain(format!("radius must be positive (got {r})")));
    }
    if !(w >= 0.0) || !w.is_finite() {
        return Err(Error::Domain(format!(
            "effective width must be finite and non-negative (got {w})"
        )));
    }
    Ok(())
}

/// S(r) = erf(r/2√W); 1 at W = 0.
pub fn screening_factor(r: f64, w: f64) -> Result<f64> {
    check_domain(r, w)?;
    if w == 0.0 {
        return Ok(1.0);
    }
    Ok(erf(r / (2.0 * w.sqrt())))
}

/// Fraction of the electron charge inside radius r:
/// Q/e = S(r) − (r/√(πW)) e^{−r²/4W}; 1 at W = 0.
pub fn enclosed_charge_fraction(r: f64, w: f64) -> Result<f64> {
    check_domain(r, w)?;
    if w == 0.0 {
        return Ok(1.0);
    }
    let x = r / (2.0 * w.sqrt());
    if x < 1.0 {
        // (4/√π) ∫₀ˣ t² e^{−t²} dt term by term; the closed form cancels here
        let x2 = x * x;
        let mut power = x2 * x;
        let mut sum = 0.0;
        for n in 0..60 {
            let term = power / (2 * n + 3) as f64;
            sum += term;
            if term.abs() < 1e-18 * sum.abs() {
                break;
            }
            power *= -x2 / (n + 1) as f64;
        }
        return Ok(2.0 * FRAC_2_SQRT_PI * sum);
    }
    Ok(erf(x) - FRAC_2_SQRT_PI * x * (-x * x).exp())
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct ScreeningSample {
    /// Radius, eV⁻¹.
    pub r: f64,
    #[serde(rename = "S")]
    pub s: f64,
    #[serde(rename = "Q_frac")]
    pub q_frac: f64,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ScreeningProfile {
    pub samples: Vec<ScreeningSample>,
    /// W, eV⁻².
    pub effective_width_sq: f64,
}

impl ScreeningProfile {
    /// Samples S and Q/e for a given effective width.
    pub fn from_width(w: f64, r_grid: &[f64]) -> Result<Self> {
        let samples = r_grid
            .iter()
            .map(|&r| {
                Ok(ScreeningSample {
                    r,
                    s: screening_factor(r, w)?,
                    q_frac: enclosed_charge_fraction(r, w)?,
                })
            })
            .collect::<Result<_>>()?;
        Ok(Self {
            samples,
            effective_width_sq: w,
        })
    }
}

/// Screening profile of `packet` under the infrared exponent fixed by
/// `params` and `cutoffs`.
pub fn field_profile(
    params: &PhysParams,
    cutoffs: &CutoffScheme,
    policy: HierarchyPolicy,
    packet: &GaussianPacket,
    r_grid: &[f64],
    tol: Tolerance,
) -> Result<ScreeningProfile> {
    let exponent = ir_brackets(params, cutoffs, policy, tol)?;
    ScreeningProfile::from_width(effective_width_sq(&exponent, packet), r_grid)
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct NullificationPoint {
    #[serde(rename = "lambda0_eV")]
    pub lambda0: f64,
    #[serde(rename = "S_at_r")]
    pub s_at_r: f64,
}

/// S(r) along a strictly descending grid of infrared cutoffs.
pub fn nullification_scan(
    params: &PhysParams,
    lambda_soft: f64,
    r: f64,
    lambda0_grid: &[f64],
    packet: &GaussianPacket,
    policy: HierarchyPolicy,
    tol: Tolerance,
) -> Result<Vec<NullificationPoint>> {
    if lambda0_grid.windows(2).any(|p| !(p[1] < p[0])) {
        return Err(Error::GridNotDescending);
    }
    lambda0_grid
        .iter()
        .map(|&lambda0| {
            let cutoffs = CutoffScheme::new(0.0, lambda0, lambda_soft);
            let exponent = ir_brackets(params, &cutoffs, policy, tol)?;
            Ok(NullificationPoint {
                lambda0,
                s_at_r: screening_factor(r, effective_width_sq(&exponent, packet))?,
            })
        })
        .collect()
}

/// Charge density of the equivalent Gaussian distribution,
/// (4πW)^{−3/2} e^{−r²/4W}, normalized to one.
pub fn equivalent_charge_density(r: f64, w: f64) -> f64 {
    (4.0 * PI * w).powf(-1.5) * (-r * r / (4.0 * w)).exp()
}
