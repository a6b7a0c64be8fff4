use std::time::{Duration, Instant};

use irfield_core::field::{effective_width_sq, ScreeningProfile};
use irfield_core::verify::{all_passed, eikonal_suite, smearing_suite, Check};
use irfield_core::{
    cutoff_from_duration, finite_t_tau, ir_brackets, nullification_scan, spreading_dominance_ratio,
    validate_hierarchy, zero_t_threshold_time, CutoffScheme, IRExponent, PhysParams,
};
use rayon::prelude::*;
use serde_json::{json, Value};

use crate::args::{CommandKind, Format};
use crate::config::{RunConfig, TimescaleRegime};
use crate::error::{CliError, Context};
use crate::goldens;
use crate::table::{Cell, Table};

pub const EXPONENT_COLUMNS: [&str; 6] = [
    "lambda0_eV",
    "Lambda_eV",
    "T_eV",
    "vacuum_bracket",
    "thermal_bracket",
    "coefficient_C_eV_m2",
];
pub const PROFILE_COLUMNS: [&str; 3] = ["r_eV_inv", "S", "Q_frac"];
pub const FLUX_COLUMNS: [&str; 2] = ["r_eV_inv", "Q_frac"];
pub const SCAN_COLUMNS: [&str; 2] = ["lambda0_eV", "S_at_r"];
pub const TIMESCALE_COLUMNS: [&str; 6] = [
    "regime",
    "r_m",
    "T_eV",
    "tau_s",
    "log10_tau",
    "spreading_dominance_ratio",
];
pub const CUTOFF_COLUMNS: [&str; 2] = ["tau_s", "lambda0_eV"];
pub const CHECK_COLUMNS: [&str; 5] = [
    "identity",
    "max_deviation",
    "tolerance",
    "passed",
    "informational",
];
pub const SWEEP_COLUMNS: [&str; 6] = ["lambda0_eV", "T_eV", "r_eV_inv", "W_eV_m2", "S", "Q_frac"];

/// Gauss-law tolerance on Q/e at r = 10√W.
pub const GAUSS_LAW_TOLERANCE: f64 = 1e-6;

#[derive(Clone, Debug)]
pub struct RunReport {
    pub command: CommandKind,
    pub inputs: Value,
    pub anchor: &'static str,
    pub table: Table,
    pub summary: Value,
    pub checks: Vec<Check>,
    pub warnings: Vec<String>,
    /// Logged, never serialized, so payloads stay byte-identical.
    pub wall_time: Duration,
}

impl RunReport {
    pub fn from_table(config: &RunConfig, anchor: &'static str, table: Table) -> Self {
        Self {
            command: config.command,
            inputs: serde_json::to_value(config).expect("config serializes"),
            anchor,
            table,
            summary: Value::Null,
            checks: Vec::new(),
            warnings: Vec::new(),
            wall_time: Duration::ZERO,
        }
    }

    pub fn passed(&self) -> bool {
        all_passed(&self.checks)
    }

    pub fn render(&self, format: Format) -> String {
        match format {
            Format::Csv => self.table.to_csv(),
            Format::Json => {
                let mut doc = json!({
                    "command": self.command.name(),
                    "anchor": self.anchor,
                    "inputs": self.inputs,
                    "results": self.table.to_json(),
                    "passed": self.passed(),
                });
                if !self.summary.is_null() {
                    doc["summary"] = self.summary.clone();
                }
                if !self.warnings.is_empty() {
                    doc["warnings"] = json!(self.warnings);
                }
                let mut s = serde_json::to_string_pretty(&doc).expect("report serializes");
                s.push('\n');
                s
            }
        }
    }
}

pub fn run(config: &RunConfig) -> Result<RunReport, CliError> {
    let start = Instant::now();
    let mut report = match config.command {
        CommandKind::Exponent => exponent(config),
        CommandKind::FieldProfile => field_profile(config),
        CommandKind::Flux => flux(config),
        CommandKind::NullificationScan => scan(config),
        CommandKind::VerifyIdentities => verify(config),
        CommandKind::Timescale => timescale(config),
        CommandKind::Sweep => sweep(config),
        CommandKind::RegenerateGoldens => goldens::regenerate_command(config),
    }?;
    report.wall_time = start.elapsed();
    log::info!(
        "{} finished in {:?}",
        config.command.name(),
        report.wall_time
    );
    Ok(report)
}

fn hierarchy_warnings(
    config: &RunConfig,
    params: &PhysParams,
    cutoffs: &CutoffScheme,
) -> Result<Vec<String>, CliError> {
    let report = validate_hierarchy(params, cutoffs, config.hierarchy).context(|| {
        format!(
            "cutoffs λ₀ = {:e} eV, Λ = {:e} eV",
            cutoffs.lambda0_ir, cutoffs.lambda_soft
        )
    })?;
    Ok(report
        .warnings
        .iter()
        .map(|w| {
            let text = format!(
                "{} holds only weakly at λ₀ = {:e} eV",
                w.name(),
                cutoffs.lambda0_ir
            );
            log::warn!("{text}");
            text
        })
        .collect())
}

fn exponent_at(
    config: &RunConfig,
    params: &PhysParams,
    lambda0: f64,
) -> Result<(IRExponent, Vec<String>), CliError> {
    let cutoffs = config.cutoffs.with_lambda0(lambda0);
    let warnings = hierarchy_warnings(config, params, &cutoffs)?;
    let e = ir_brackets(params, &cutoffs, config.hierarchy, config.tolerance)
        .context(|| format!("infrared exponent at λ₀ = {lambda0:e} eV"))?;
    Ok((e, warnings))
}

fn exponent(config: &RunConfig) -> Result<RunReport, CliError> {
    let mut table = Table::new(&EXPONENT_COLUMNS);
    let mut warnings = Vec::new();
    let mut worst_gap = 0.0f64;
    for lambda0 in config.lambda0_values() {
        let (e, w) = exponent_at(config, &config.params, lambda0)?;
        warnings.extend(w);
        worst_gap = worst_gap.max((e.vacuum_bracket_quadrature / e.vacuum_bracket - 1.0).abs());
        table.push(vec![
            lambda0.into(),
            e.cutoffs.lambda_soft.into(),
            e.params.temperature_ev.into(),
            e.vacuum_bracket.into(),
            e.thermal_bracket.into(),
            e.coefficient_c.into(),
        ]);
    }
    let anchor = if config.params.is_thermal() {
        "thermal_bracket_2T_over_lambda0_plus_ln_Lambda_over_T"
    } else {
        "vacuum_bracket_ln_Lambda_over_lambda0"
    };
    let mut report = RunReport::from_table(config, anchor, table);
    report.summary = json!({ "vacuum_quadrature_max_rel_gap": worst_gap });
    report.warnings = warnings;
    Ok(report)
}

fn width_for(config: &RunConfig) -> Result<(f64, IRExponent, Vec<String>), CliError> {
    let (e, warnings) = exponent_at(config, &config.params, config.cutoffs.lambda0_ir)?;
    Ok((effective_width_sq(&e, &config.packet), e, warnings))
}

fn profile(w: f64, grid: &[f64]) -> Result<ScreeningProfile, CliError> {
    ScreeningProfile::from_width(w, grid).context(|| "screening profile".into())
}

fn field_profile(config: &RunConfig) -> Result<RunReport, CliError> {
    let (w, e, warnings) = width_for(config)?;
    let p = profile(w, config.r_grid()?)?;
    let mut table = Table::new(&PROFILE_COLUMNS);
    for s in &p.samples {
        table.push(vec![s.r.into(), s.s.into(), s.q_frac.into()]);
    }
    let mut report = RunReport::from_table(config, "screened_coulomb_erf_profile", table);
    report.summary = json!({
        "effective_width_sq_eV_m2": w,
        "coefficient_C_eV_m2": e.coefficient_c,
    });
    report.warnings = warnings;
    Ok(report)
}

fn flux(config: &RunConfig) -> Result<RunReport, CliError> {
    let (w, e, warnings) = width_for(config)?;
    let p = profile(w, config.r_grid()?)?;
    let mut table = Table::new(&FLUX_COLUMNS);
    for s in &p.samples {
        table.push(vec![s.r.into(), s.q_frac.into()]);
    }
    let far = if w > 0.0 { 10.0 * w.sqrt() } else { 1.0 };
    let q_far =
        irfield_core::enclosed_charge_fraction(far, w).context(|| "Gauss-law radius".into())?;
    let mut report = RunReport::from_table(config, "gauss_law_unit_charge", table);
    report.summary = json!({
        "effective_width_sq_eV_m2": w,
        "coefficient_C_eV_m2": e.coefficient_c,
        "r_gauss_eV_inv": far,
        "Q_frac_at_r_gauss": q_far,
    });
    report.checks.push(Check {
        name: "gauss_law_at_ten_widths",
        max_deviation: (q_far - 1.0).abs(),
        tolerance: GAUSS_LAW_TOLERANCE,
        passed: (q_far - 1.0).abs() <= GAUSS_LAW_TOLERANCE,
        informational: false,
    });
    report.warnings = warnings;
    Ok(report)
}

fn scan(config: &RunConfig) -> Result<RunReport, CliError> {
    let r = config
        .r
        .ok_or_else(|| CliError::config("r", "required by nullification-scan"))?;
    let grid = config
        .grids
        .lambda0
        .as_deref()
        .ok_or_else(|| CliError::config("lambda0-grid", "required by nullification-scan"))?;
    let mut warnings = Vec::new();
    for &lambda0 in grid {
        warnings.extend(hierarchy_warnings(
            config,
            &config.params,
            &config.cutoffs.with_lambda0(lambda0),
        )?);
    }
    let points = nullification_scan(
        &config.params,
        config.cutoffs.lambda_soft,
        r,
        grid,
        &config.packet,
        config.hierarchy,
        config.tolerance,
    )
    .context(|| "nullification scan".into())?;
    let mut table = Table::new(&SCAN_COLUMNS);
    for p in &points {
        table.push(vec![p.lambda0.into(), p.s_at_r.into()]);
    }
    let monotone = points.windows(2).all(|w| w[1].s_at_r < w[0].s_at_r);
    let mut report = RunReport::from_table(config, "field_nullification_as_lambda0_to_0", table);
    report.summary = json!({ "strictly_decreasing": monotone });
    report.warnings = warnings;
    Ok(report)
}

fn verify(config: &RunConfig) -> Result<RunReport, CliError> {
    let mut checks = eikonal_suite(config.seed, config.n_max).context(|| "eikonal suite".into())?;
    checks.extend(smearing_suite().context(|| "smearing suite".into())?);
    let mut table = Table::new(&CHECK_COLUMNS);
    for c in &checks {
        table.push(vec![
            c.name.into(),
            c.max_deviation.into(),
            c.tolerance.into(),
            c.passed.into(),
            c.informational.into(),
        ]);
    }
    let mut report =
        RunReport::from_table(config, "eikonal_factorization_and_smearing_kernels", table);
    report.checks = checks;
    Ok(report)
}

fn timescale(config: &RunConfig) -> Result<RunReport, CliError> {
    let params = &config.params;
    match config.regime {
        TimescaleRegime::ZeroT => {
            let t = zero_t_threshold_time(params).context(|| "zero-T timescale".into())?;
            let mut table = Table::new(&TIMESCALE_COLUMNS);
            table.push(vec![
                "zero_T".into(),
                Cell::Missing,
                0.0.into(),
                t.tau_seconds.into(),
                t.log10_tau.into(),
                Cell::Missing,
            ]);
            let mut report = RunReport::from_table(config, "tau_zero_T_10^540", table);
            report.summary = json!({ "log10_tau": t.log10_tau, "tau_seconds": t.tau_seconds });
            Ok(report)
        }
        TimescaleRegime::FiniteT => {
            let temperature = params.temperature_ev;
            if !(temperature > 0.0) {
                return Err(CliError::config("T", "finite-T regime needs T > 0"));
            }
            let radii = match (&config.grids.r, config.r) {
                (Some(g), _) => g.clone(),
                (None, Some(r)) => vec![r],
                (None, None) => {
                    return Err(CliError::config(
                        "r",
                        "finite-T regime needs --r or --r-grid (meters)",
                    ))
                }
            };
            let ratio = spreading_dominance_ratio(temperature, params)
                .context(|| "spreading ratio".into())?;
            let mut table = Table::new(&TIMESCALE_COLUMNS);
            for r in radii {
                let t = finite_t_tau(r, temperature, params)
                    .context(|| format!("finite-T timescale at r = {r:e} m"))?;
                table.push(vec![
                    "finite_T".into(),
                    r.into(),
                    temperature.into(),
                    t.tau_seconds.into(),
                    t.log10_tau.into(),
                    ratio.into(),
                ]);
            }
            Ok(RunReport::from_table(
                config,
                "tau_finite_T_10^2_to_10^10_s",
                table,
            ))
        }
        TimescaleRegime::Cutoff => {
            let tau = config
                .tau_seconds
                .ok_or_else(|| CliError::config("tau", "cutoff regime needs a duration"))?;
            let lambda0 =
                cutoff_from_duration(tau, params).context(|| "measurement cutoff".into())?;
            let mut table = Table::new(&CUTOFF_COLUMNS);
            table.push(vec![tau.into(), lambda0.into()]);
            Ok(RunReport::from_table(config, "cutoff_hbar_over_tau", table))
        }
    }
}

/// λ₀, T, W and hierarchy warnings for one sweep point.
type SweepPoint = (f64, f64, f64, Vec<String>);

fn sweep(config: &RunConfig) -> Result<RunReport, CliError> {
    let radii = config.r_grid()?;
    let points: Vec<(f64, f64)> = config
        .lambda0_values()
        .into_iter()
        .flat_map(|l| config.temperature_values().into_iter().map(move |t| (l, t)))
        .collect();
    let results: Vec<Result<SweepPoint, CliError>> = points
        .par_iter()
        .map(|&(lambda0, t)| {
            let params = config.params.with_temperature(t);
            params.validate().context(|| format!("T = {t:e} eV"))?;
            let (e, warnings) = exponent_at(config, &params, lambda0)?;
            Ok((lambda0, t, effective_width_sq(&e, &config.packet), warnings))
        })
        .collect();
    let mut table = Table::new(&SWEEP_COLUMNS);
    let mut warnings = Vec::new();
    for result in results {
        let (lambda0, t, w, warn) = result?;
        warnings.extend(warn);
        for s in profile(w, radii)?.samples {
            table.push(vec![
                lambda0.into(),
                t.into(),
                s.r.into(),
                w.into(),
                s.s.into(),
                s.q_frac.into(),
            ]);
        }
    }
    let mut report = RunReport::from_table(config, "cutoff_temperature_radius_sweep", table);
    report.warnings = warnings;
    Ok(report)
}
