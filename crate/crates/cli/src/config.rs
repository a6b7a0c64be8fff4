use std::path::PathBuf;

use irfield_core::{CutoffScheme, GaussianPacket, HierarchyPolicy, PhysParams, Tolerance};
use serde::Serialize;

use crate::args::{Cli, CommandKind, Format, RegimeArg};
use crate::error::{CliError, Context};
use crate::grid::parse_grid;

#[derive(Clone, Debug, Default, PartialEq, Serialize)]
pub struct Grids {
    pub r: Option<Vec<f64>>,
    pub lambda0: Option<Vec<f64>>,
    #[serde(rename = "T")]
    pub temperature: Option<Vec<f64>>,
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
pub enum TimescaleRegime {
    #[serde(rename = "zero-T")]
    ZeroT,
    #[serde(rename = "finite-T")]
    FiniteT,
    #[serde(rename = "cutoff")]
    Cutoff,
}

/// Everything a run needs, validated.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct RunConfig {
    #[serde(skip)]
    pub command: CommandKind,
    pub params: PhysParams,
    pub cutoffs: CutoffScheme,
    pub packet: GaussianPacket,
    pub grids: Grids,
    pub r: Option<f64>,
    pub regime: TimescaleRegime,
    pub tau_seconds: Option<f64>,
    pub seed: u64,
    pub n_max: usize,
    #[serde(skip)]
    pub format: Format,
    #[serde(skip)]
    pub output_path: Option<PathBuf>,
    pub tolerance: Tolerance,
    pub hierarchy: HierarchyPolicy,
    #[serde(skip)]
    pub golden_filter: Option<String>,
    #[serde(skip)]
    pub goldens_dir: Option<PathBuf>,
}

fn parse_center(text: &str) -> Result<[f64; 3], CliError> {
    let parts = parse_grid("x0", text)?;
    <[f64; 3]>::try_from(parts)
        .map_err(|_| CliError::config("x0", format!("expected three components, got `{text}`")))
}

impl RunConfig {
    pub fn from_cli(cli: &Cli) -> Result<Self, CliError> {
        let o = &cli.options;
        let params = PhysParams {
            mass_ev: o.mass_ev,
            alpha: o.alpha,
            temperature_ev: o.temperature,
            ..PhysParams::default()
        };
        params.validate().context(|| "physical parameters".into())?;
        let tolerance = Tolerance::new(o.tol_rel, 0.0).context(|| "tolerance".into())?;
        if !(o.hierarchy_ratio > 1.0) {
            return Err(CliError::config("hierarchy-ratio", "must exceed 1"));
        }
        let packet = GaussianPacket::new(parse_center(&o.center_x0)?, o.width_a)
            .context(|| "wave packet".into())?;
        let grids = Grids {
            r: o.r_grid
                .as_deref()
                .map(|g| parse_grid("r-grid", g))
                .transpose()?,
            lambda0: o
                .lambda0_grid
                .as_deref()
                .map(|g| parse_grid("lambda0-grid", g))
                .transpose()?,
            temperature: o
                .temperature_grid
                .as_deref()
                .map(|g| parse_grid("T-grid", g))
                .transpose()?,
        };
        let format = o.format.unwrap_or(match cli.command {
            CommandKind::Timescale | CommandKind::VerifyIdentities => Format::Json,
            _ => Format::Csv,
        });
        Ok(Self {
            command: cli.command,
            params,
            cutoffs: CutoffScheme::new(o.lambda_smear, o.lambda0, o.lambda_soft),
            packet,
            grids,
            r: o.r,
            regime: match o.regime {
                RegimeArg::ZeroT => TimescaleRegime::ZeroT,
                RegimeArg::FiniteT => TimescaleRegime::FiniteT,
                RegimeArg::Cutoff => TimescaleRegime::Cutoff,
            },
            tau_seconds: o.tau,
            seed: o.seed,
            n_max: o.n_max,
            format,
            output_path: o.out.clone(),
            tolerance,
            hierarchy: HierarchyPolicy {
                ratio: o.hierarchy_ratio,
                lenient: o.lenient,
            },
            golden_filter: o.filter.clone(),
            goldens_dir: o.goldens_dir.clone(),
        })
    }

    /// λ₀ values: the grid if given, otherwise the single cutoff.
    pub fn lambda0_values(&self) -> Vec<f64> {
        self.grids
            .lambda0
            .clone()
            .unwrap_or_else(|| vec![self.cutoffs.lambda0_ir])
    }

    pub fn temperature_values(&self) -> Vec<f64> {
        self.grids
            .temperature
            .clone()
            .unwrap_or_else(|| vec![self.params.temperature_ev])
    }

    pub fn r_grid(&self) -> Result<&[f64], CliError> {
        self.grids
            .r
            .as_deref()
            .ok_or_else(|| CliError::config("r-grid", "required by this command"))
    }
}
