//! Command-line flags.

use std::path::PathBuf;

use clap::{Args, Parser, Subcommand, ValueEnum};
use irfield_core::params::{ALPHA_CODATA, DEFAULT_HIERARCHY_RATIO, ELECTRON_MASS_EV};

#[derive(Debug, Parser)]
#[command(
    name = "irfield",
    version,
    about = "Infrared-corrected Coulomb field of a soft-photon-dressed electron"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: CommandKind,

    #[command(flatten)]
    pub options: Options,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Subcommand)]
pub enum CommandKind {
    /// Vacuum and thermal brackets and the coefficient C over a λ₀ grid.
    Exponent,
    /// Screening factor S(r) and enclosed charge Q(r)/e over an r grid.
    FieldProfile,
    /// Enclosed-charge profile and the large-r Gauss-law check.
    Flux,
    /// S at fixed r along a descending λ₀ grid.
    NullificationScan,
    /// Seeded eikonal and smearing identity suites.
    VerifyIdentities,
    /// Thermalization times and the measurement cutoff.
    Timescale,
    /// Field profile over the cartesian product of λ₀, T and r grids.
    Sweep,
    /// Rewrite the golden CSV corpus and report what changed.
    RegenerateGoldens,
}

impl CommandKind {
    pub fn name(self) -> &'static str {
        match self {
            Self::Exponent => "exponent",
            Self::FieldProfile => "field-profile",
            Self::Flux => "flux",
            Self::NullificationScan => "nullification-scan",
            Self::VerifyIdentities => "verify-identities",
            Self::Timescale => "timescale",
            Self::Sweep => "sweep",
            Self::RegenerateGoldens => "regenerate-goldens",
        }
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum Format {
    Csv,
    Json,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, ValueEnum)]
pub enum RegimeArg {
    #[value(name = "zero-T")]
    ZeroT,
    #[value(name = "finite-T")]
    FiniteT,
    Cutoff,
}

#[derive(Clone, Debug, Args)]
pub struct Options {
    /// Electron rest energy, eV.
    #[arg(long = "mass-eV", global = true, default_value_t = ELECTRON_MASS_EV)]
    pub mass_ev: f64,

    #[arg(long, global = true, default_value_t = ALPHA_CODATA)]
    pub alpha: f64,

    /// Heat-bath temperature, eV.
    #[arg(long = "T", global = true, default_value_t = 0.0)]
    pub temperature: f64,

    /// Temperature grid for `sweep`, eV.
    #[arg(long = "T-grid", global = true)]
    pub temperature_grid: Option<String>,

    /// Smearing width λ, eV (0 removes the smearing).
    #[arg(long = "lambda-smear", global = true, default_value_t = 0.0)]
    pub lambda_smear: f64,

    /// Infrared cutoff λ₀, eV.
    #[arg(long = "lambda0", global = true, default_value_t = 1e-6)]
    pub lambda0: f64,

    /// Soft threshold Λ, eV.
    #[arg(long = "Lambda", global = true, default_value_t = 25.0)]
    pub lambda_soft: f64,

    /// Packet rms width, eV⁻¹.
    #[arg(long = "a", global = true, default_value_t = 0.0)]
    pub width_a: f64,

    /// Packet center `x,y,z`, eV⁻¹.
    #[arg(long = "x0", global = true, default_value = "0,0,0")]
    pub center_x0: String,

    /// Radii: eV⁻¹, except meters for `timescale`.
    #[arg(long = "r-grid", global = true)]
    pub r_grid: Option<String>,

    #[arg(long = "lambda0-grid", global = true)]
    pub lambda0_grid: Option<String>,

    /// Single radius: eV⁻¹, except meters for `timescale`.
    #[arg(long = "r", global = true)]
    pub r: Option<f64>,

    #[arg(long, global = true, value_enum, default_value_t = RegimeArg::ZeroT)]
    pub regime: RegimeArg,

    /// Measurement duration for `timescale --regime cutoff`, seconds.
    #[arg(long, global = true)]
    pub tau: Option<f64>,

    #[arg(long, global = true, default_value_t = 0)]
    pub seed: u64,

    /// Largest weight count for the permutation identity.
    #[arg(long = "n-max", global = true, default_value_t = 7)]
    pub n_max: usize,

    /// Defaults to JSON for `timescale` and `verify-identities`, CSV otherwise.
    #[arg(long, global = true, value_enum)]
    pub format: Option<Format>,

    /// Output file; standard output when absent.
    #[arg(long, global = true)]
    pub out: Option<PathBuf>,

    #[arg(long = "tol-rel", global = true, default_value_t = 1e-12)]
    pub tol_rel: f64,

    /// Factor standing in for "much smaller than".
    #[arg(long = "hierarchy-ratio", global = true, default_value_t = DEFAULT_HIERARCHY_RATIO)]
    pub hierarchy_ratio: f64,

    /// Accept scales ordered correctly but closer than the ratio, with a warning.
    #[arg(long, global = true)]
    pub lenient: bool,

    /// Golden case filter for `regenerate-goldens`, e.g. `timescale*`.
    #[arg(long, global = true)]
    pub filter: Option<String>,

    /// Golden corpus directory.
    #[arg(long = "goldens-dir", global = true)]
    pub goldens_dir: Option<PathBuf>,
}
