//! Physical parameters, Minkowski four-vectors and the cutoff hierarchy.
//!
//! Everything is in natural units (ħ = c = 1) with energies in eV and
//! lengths in eV⁻¹. Conversions to meters and seconds happen only at the
//! reporting boundary, through [`PhysParams::meters_to_natural`] and
//! friends.

use serde::Serialize;

use crate::error::{invalid, Error, Inequality, Result};

/// CODATA fine-structure constant.
pub const ALPHA_CODATA: f64 = 7.2973525693e-3;
/// CODATA electron rest energy, eV.
pub const ELECTRON_MASS_EV: f64 = 0.51099895e6;
/// Reduced Planck constant, eV·s.
pub const HBAR_EV_S: f64 = 6.582119569e-16;
/// Speed of light, m/s (exact).
pub const SPEED_OF_LIGHT_M_S: f64 = 299_792_458.0;
/// Default stand-in for "much smaller than".
pub const DEFAULT_HIERARCHY_RATIO: f64 = 10.0;
/// Upper bound on T/m for the single-electron picture.
pub const MAX_TEMPERATURE_MASS_RATIO: f64 = 1e-2;

#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct PhysParams {
    /// Electron rest energy, eV.
    pub mass_ev: f64,
    pub alpha: f64,
    /// Heat-bath temperature, eV. Zero selects the vacuum case.
    pub temperature_ev: f64,
    pub hbar_ev_s: f64,
}

impl Default for PhysParams {
    fn default() -> Self {
        Self {
            mass_ev: ELECTRON_MASS_EV,
            alpha: ALPHA_CODATA,
            temperature_ev: 0.0,
            hbar_ev_s: HBAR_EV_S,
        }
    }
}

impl PhysParams {
    /// Electron with CODATA constants at temperature `temperature_ev`.
    pub fn electron(temperature_ev: f64) -> Self {
        Self {
            temperature_ev,
            ..Self::default()
        }
    }

    pub fn with_temperature(self, temperature_ev: f64) -> Self {
        Self {
            temperature_ev,
            ..self
        }
    }

    /// Checks the standalone invariants (mass, coupling and temperature
    /// ranges). The cross-scale inequalities live in [`validate_hierarchy`].
    pub fn validate(&self) -> Result<()> {
        if !(self.mass_ev > 0.0 && self.mass_ev.is_finite()) {
            return Err(invalid("mass_ev", "must be positive and finite"));
        }
        if !(self.alpha > 0.0 && self.alpha < 0.1) {
            return Err(invalid("alpha", "must lie in (0, 0.1)"));
        }
        if !(self.temperature_ev >= 0.0 && self.temperature_ev.is_finite()) {
            return Err(invalid("temperature_ev", "must be non-negative"));
        }
        if !(self.hbar_ev_s > 0.0) {
            return Err(invalid("hbar_ev_s", "must be positive"));
        }
        Ok(())
    }

    pub fn is_thermal(&self) -> bool {
        self.temperature_ev > 0.0
    }

    /// ħc in eV·m.
    pub fn hbar_c_ev_m(&self) -> f64 {
        self.hbar_ev_s * SPEED_OF_LIGHT_M_S
    }

    /// Reduced Compton wavelength ħ/mc in meters.
    pub fn compton_length_m(&self) -> f64 {
        self.hbar_c_ev_m() / self.mass_ev
    }

    pub fn meters_to_natural(&self, meters: f64) -> f64 {
        meters / self.hbar_c_ev_m()
    }

    pub fn natural_to_meters(&self, inv_ev: f64) -> f64 {
        inv_ev * self.hbar_c_ev_m()
    }

    /// Converts a time in eV⁻¹ to seconds.
    pub fn natural_to_seconds(&self, inv_ev: f64) -> f64 {
        inv_ev * self.hbar_ev_s
    }

    /// Electric charge in natural (Heaviside-Lorentz) units, e = √(4πα).
    pub fn charge(&self) -> f64 {
        (4.0 * std::f64::consts::PI * self.alpha).sqrt()
    }
}

/// Minkowski four-vector; `t` is the energy component.
#[derive(Clone, Copy, Debug, Default, PartialEq, Serialize)]
pub struct FourVector {
    pub t: f64,
    pub x: f64,
    pub y: f64,
    pub z: f64,
}

impl FourVector {
    pub const fn new(t: f64, x: f64, y: f64, z: f64) -> Self {
        Self { t, x, y, z }
    }

    pub const fn at_rest(mass: f64) -> Self {
        Self::new(mass, 0.0, 0.0, 0.0)
    }

    pub fn spatial_norm_sq(&self) -> f64 {
        self.x * self.x + self.y * self.y + self.z * self.z
    }

    /// All-plus quadratic form t² + |x|², as used by the smearing kernels.
    pub fn euclidean_norm_sq(&self) -> f64 {
        self.t * self.t + self.spatial_norm_sq()
    }

    pub fn dot(&self, other: &FourVector) -> f64 {
        minkowski_dot(self, other)
    }
}

impl std::ops::Neg for FourVector {
    type Output = FourVector;

    fn neg(self) -> FourVector {
        FourVector::new(-self.t, -self.x, -self.y, -self.z)
    }
}

impl std::ops::Add for FourVector {
    type Output = FourVector;

    fn add(self, o: FourVector) -> FourVector {
        FourVector::new(self.t + o.t, self.x + o.x, self.y + o.y, self.z + o.z)
    }
}

impl std::ops::Sub for FourVector {
    type Output = FourVector;

    fn sub(self, o: FourVector) -> FourVector {
        self + (-o)
    }
}

impl std::ops::Mul<FourVector> for f64 {
    type Output = FourVector;

    fn mul(self, v: FourVector) -> FourVector {
        FourVector::new(self * v.t, self * v.x, self * v.y, self * v.z)
    }
}

/// Signature (+, −, −, −).
pub fn minkowski_dot(a: &FourVector, b: &FourVector) -> f64 {
    a.t * b.t - a.x * b.x - a.y * b.y - a.z * b.z
}

/// Smearing width λ, infrared cutoff λ₀ and soft threshold Λ, all in eV.
///
/// `lambda_smear = 0` means the smearing is removed.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct CutoffScheme {
    pub lambda_smear: f64,
    pub lambda0_ir: f64,
    pub lambda_soft: f64,
}

impl CutoffScheme {
    pub fn new(lambda_smear: f64, lambda0_ir: f64, lambda_soft: f64) -> Self {
        Self {
            lambda_smear,
            lambda0_ir,
            lambda_soft,
        }
    }

    /// Same scheme with a different infrared cutoff.
    pub fn with_lambda0(self, lambda0_ir: f64) -> Self {
        Self { lambda0_ir, ..self }
    }
}

/// How strictly "≪" is enforced.
#[derive(Clone, Copy, Debug, PartialEq, Serialize)]
pub struct HierarchyPolicy {
    /// `a ≪ b` is read as `a · ratio < b`.
    pub ratio: f64,
    /// Downgrade `a < b < a · ratio` from an error to a warning.
    pub lenient: bool,
}

impl Default for HierarchyPolicy {
    fn default() -> Self {
        Self {
            ratio: DEFAULT_HIERARCHY_RATIO,
            lenient: false,
        }
    }
}

impl HierarchyPolicy {
    pub fn strict(ratio: f64) -> Self {
        Self {
            ratio,
            lenient: false,
        }
    }
}

/// Successful validation; `warnings` is only ever non-empty in lenient mode.
#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct HierarchyReport {
    pub warnings: Vec<Inequality>,
}

enum Check {
    /// Must hold exactly.
    Hard(bool),
    /// `small · factor < large`; lenient mode tolerates `small < large`.
    Scaled { small: f64, large: f64, factor: f64 },
}

/// Checks every parameter invariant and every cutoff inequality.
///
/// The error lists each violated inequality, not just the first one.
pub fn validate_hierarchy(
    params: &PhysParams,
    cutoffs: &CutoffScheme,
    policy: HierarchyPolicy,
) -> Result<HierarchyReport> {
    if !(policy.ratio > 1.0) {
        return Err(invalid("hierarchy_ratio", "must exceed 1"));
    }
    let r = policy.ratio;
    let t = params.temperature_ev;
    let thermal = t > 0.0;
    let smeared = cutoffs.lambda_smear > 0.0;

    let mut checks = vec![
        (Inequality::MassPositive, Check::Hard(params.mass_ev > 0.0)),
        (
            Inequality::AlphaInRange,
            Check::Hard(params.alpha > 0.0 && params.alpha < 0.1),
        ),
        (Inequality::TemperatureNonNegative, Check::Hard(t >= 0.0)),
        (
            Inequality::SmearWidthNonNegative,
            Check::Hard(cutoffs.lambda_smear >= 0.0),
        ),
        (
            Inequality::InfraredPositive,
            Check::Hard(cutoffs.lambda0_ir > 0.0),
        ),
        (
            Inequality::InfraredBelowSoft,
            Check::Hard(cutoffs.lambda0_ir < cutoffs.lambda_soft),
        ),
        (
            Inequality::SoftBelowMass,
            Check::Scaled {
                small: cutoffs.lambda_soft,
                large: params.mass_ev,
                factor: r,
            },
        ),
    ];
    if thermal {
        checks.push((
            Inequality::TemperatureBelowMass,
            Check::Scaled {
                small: t,
                large: params.mass_ev,
                factor: 1.0 / MAX_TEMPERATURE_MASS_RATIO,
            },
        ));
        checks.push((
            Inequality::InfraredBelowTemperature,
            Check::Scaled {
                small: cutoffs.lambda0_ir,
                large: t,
                factor: r,
            },
        ));
        checks.push((
            Inequality::TemperatureBelowSoft,
            Check::Scaled {
                small: t,
                large: cutoffs.lambda_soft,
                factor: r,
            },
        ));
    }
    if smeared {
        checks.push((
            Inequality::SmearBelowInfrared,
            Check::Scaled {
                small: cutoffs.lambda_smear,
                large: cutoffs.lambda0_ir,
                factor: r,
            },
        ));
    }

    let mut violations = Vec::new();
    let mut warnings = Vec::new();
    for (which, check) in checks {
        match check {
            Check::Hard(true) => {}
            Check::Hard(false) => violations.push(which),
            Check::Scaled {
                small,
                large,
                factor,
            } => {
                if small * factor < large {
                    continue;
                }
                if policy.lenient && small < large {
                    warnings.push(which);
                } else {
                    violations.push(which);
                }
            }
        }
    }

    if violations.is_empty() {
        Ok(HierarchyReport { warnings })
    } else {
        Err(Error::HierarchyViolation(violations))
    }
}
