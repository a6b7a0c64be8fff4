use std::fmt;

use serde::Serialize;

/// One inequality of the cutoff/parameter hierarchy.
///
/// Named after the relation it checks so a violation list reads as a
/// diagnosis: `SoftBelowMass` means `Λ · ratio < m` failed.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, Serialize)]
pub enum Inequality {
    MassPositive,
    AlphaInRange,
    TemperatureNonNegative,
    TemperatureBelowMass,
    SmearWidthNonNegative,
    SmearBelowInfrared,
    InfraredPositive,
    InfraredBelowSoft,
    SoftBelowMass,
    InfraredBelowTemperature,
    TemperatureBelowSoft,
}

impl Inequality {
    pub fn name(self) -> &'static str {
        match self {
            Inequality::MassPositive => "m > 0",
            Inequality::AlphaInRange => "0 < alpha < 0.1",
            Inequality::TemperatureNonNegative => "T >= 0",
            Inequality::TemperatureBelowMass => "T < 1e-2 m",
            Inequality::SmearWidthNonNegative => "lambda >= 0",
            Inequality::SmearBelowInfrared => "lambda << lambda0",
            Inequality::InfraredPositive => "lambda0 > 0",
            Inequality::InfraredBelowSoft => "lambda0 < Lambda",
            Inequality::SoftBelowMass => "Lambda << m",
            Inequality::InfraredBelowTemperature => "lambda0 << T",
            Inequality::TemperatureBelowSoft => "T << Lambda",
        }
    }
}

impl fmt::Display for Inequality {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

fn join(list: &[Inequality]) -> String {
    list.iter().map(|i| i.name()).collect::<Vec<_>>().join(", ")
}

#[derive(Debug, Clone, PartialEq, thiserror::Error)]
pub enum Error {
    #[error("hierarchy violated: {}", join(.0))]
    HierarchyViolation(Vec<Inequality>),

    #[error("invalid parameter `{name}`: {reason}")]
    InvalidParameter { name: &'static str, reason: String },

    #[error("domain error: {0}")]
    Domain(String),

    #[error("quadrature did not converge after {evaluations} evaluations (error estimate {error_estimate:e}, value {value:e})")]
    NonConvergence {
        value: f64,
        error_estimate: f64,
        evaluations: usize,
    },

    #[error("integrand is not finite at x = {0:e}")]
    NonFiniteEvaluation(f64),

    #[error("smeared denominator needs a rest-frame momentum (m, 0, 0, 0)")]
    RestFrameRequired,

    #[error("{n} weights exceed the enumeration limit of {max}")]
    TooLarge { n: usize, max: usize },

    #[error("a permutation prefix of the eikonal weights sums to zero")]
    SingularPrefix,

    #[error("|p|^2 = {p_sq:e} exceeds the nonrelativistic bound {limit:e}")]
    NonrelativisticViolation { p_sq: f64, limit: f64 },

    #[error("cutoff grid must be sorted in strictly descending order")]
    GridNotDescending,
}

pub type Result<T> = std::result::Result<T, Error>;

pub(crate) fn invalid(name: &'static str, reason: impl Into<String>) -> Error {
    Error::InvalidParameter {
        name,
        reason: reason.into(),
    }
}
