//! Thermalization and spreading timescales.
//!
//! A measurement lasting τ cannot resolve photons softer than ħ/τ, which
//! fixes λ₀. The times below are those at which the infrared suppression of
//! the field at distance r becomes of order one.

use std::f64::consts::{LN_10, PI};

use serde::Serialize;

use crate::error::{invalid, Error, Result};
use crate::params::PhysParams;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum Regime {
    #[serde(rename = "zero_T")]
    ZeroT,
    #[serde(rename = "finite_T")]
    FiniteT,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimescaleInputs {
    pub r_meters: Option<f64>,
    #[serde(rename = "T_eV")]
    pub temperature_ev: f64,
    pub params: PhysParams,
}

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct TimescaleReport {
    pub regime: Regime,
    /// `None` when τ overflows a double; `log10_tau` is always available.
    pub tau_seconds: Option<f64>,
    pub log10_tau: f64,
    pub inputs: TimescaleInputs,
}

impl TimescaleReport {
    fn from_log10(regime: Regime, log10_tau: f64, inputs: TimescaleInputs) -> Self {
        let tau = 10f64.powf(log10_tau);
        Self {
            regime,
            tau_seconds: (tau.is_finite() && tau > 0.0).then_some(tau),
            log10_tau,
            inputs,
        }
    }
}

fn check_constants(params: &PhysParams) -> Result<()> {
    if !(params.mass_ev > 0.0) {
        return Err(invalid("mass_ev", "must be positive"));
    }
    if !(params.alpha > 0.0) {
        return Err(invalid("alpha", "must be positive"));
    }
    if !(params.hbar_ev_s > 0.0) {
        return Err(invalid("hbar_ev_s", "must be positive"));
    }
    Ok(())
}

/// λ₀ = ħ/τ in eV.
pub fn cutoff_from_duration(tau_seconds: f64, params: &PhysParams) -> Result<f64> {
    if !(tau_seconds > 0.0) {
        return Err(Error::Domain(format!(
            "duration must be positive (got {tau_seconds})"
        )));
    }
    Ok(params.hbar_ev_s / tau_seconds)
}

/// Duration after which the vacuum exponent (α/3π) ln(mτ/ħ) reaches one:
/// τ = (ħ/m) e^{3π/α}.
pub fn zero_t_threshold_time(params: &PhysParams) -> Result<TimescaleReport> {
    check_constants(params)?;
    let log10_tau = (params.hbar_ev_s / params.mass_ev).log10() + 3.0 * PI / params.alpha / LN_10;
    Ok(TimescaleReport::from_log10(
        Regime::ZeroT,
        log10_tau,
        TimescaleInputs {
            r_meters: None,
            temperature_ev: 0.0,
            params: *params,
        },
    ))
}

fn check_positive(name: &'static str, value: f64) -> Result<()> {
    if value > 0.0 && value.is_finite() {
        Ok(())
    } else {
        Err(Error::Domain(format!(
            "{name} must be positive (got {value})"
        )))
    }
}

/// τ = 3πħ/(2αT) · (r/l_c)², with l_c the reduced Compton length.
pub fn finite_t_tau(
    r_meters: f64,
    temperature_ev: f64,
    params: &PhysParams,
) -> Result<TimescaleReport> {
    check_constants(params)?;
    check_positive("r", r_meters)?;
    check_positive("T", temperature_ev)?;
    let ratio = r_meters / params.compton_length_m();
    let tau = 3.0 * PI * params.hbar_ev_s / (2.0 * params.alpha * temperature_ev) * ratio * ratio;
    Ok(TimescaleReport {
        regime: Regime::FiniteT,
        tau_seconds: Some(tau),
        log10_tau: tau.log10(),
        inputs: TimescaleInputs {
            r_meters: Some(r_meters),
            temperature_ev,
            params: *params,
        },
    })
}

/// Time for a packet of width r to spread by its own size, m r²/ħ, in seconds.
pub fn spreading_time(r_meters: f64, params: &PhysParams) -> Result<f64> {
    check_constants(params)?;
    check_positive("r", r_meters)?;
    let r = params.meters_to_natural(r_meters);
    Ok(params.natural_to_seconds(params.mass_ev * r * r))
}

/// τ_thermal/τ_spread = (3π/2α)(m/T), independent of r.
pub fn spreading_dominance_ratio(temperature_ev: f64, params: &PhysParams) -> Result<f64> {
    check_constants(params)?;
    check_positive("T", temperature_ev)?;
    Ok(3.0 * PI / (2.0 * params.alpha) * params.mass_ev / temperature_ev)
}
