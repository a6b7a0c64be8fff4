//! Golden CSV corpus: fixed invocations whose output is checked in.

use std::collections::BTreeMap;
use std::fs;
use std::path::{Path, PathBuf};

use clap::Parser;
use serde::Serialize;

use crate::args::Cli;
use crate::config::RunConfig;
use crate::error::CliError;
use crate::run::{run, RunReport};
use crate::table::{Cell, ParsedCsv, Table};

pub const MANIFEST_FILE: &str = "MANIFEST.json";
pub const GOLDEN_SEED: u64 = 0;
/// Relative tolerance for computed columns.
pub const GOLDEN_REL_TOL: f64 = 1e-9;
/// Relative tolerance for columns that echo grid inputs.
pub const GOLDEN_INPUT_REL_TOL: f64 = 1e-15;
const INPUT_COLUMNS: [&str; 5] = ["lambda0_eV", "Lambda_eV", "T_eV", "r_eV_inv", "r_m"];
/// Absolute floor so that cells underflowing toward zero compare equal.
pub const GOLDEN_ABS_FLOOR: f64 = 1e-300;

#[derive(Clone, Copy, Debug, Serialize)]
pub struct GoldenCase {
    pub name: &'static str,
    pub args: &'static [&'static str],
}

impl GoldenCase {
    pub fn file_name(&self) -> String {
        format!("{}.csv", self.name)
    }
}

pub const CASES: &[GoldenCase] = &[
    GoldenCase {
        name: "exponent_T0",
        args: &[
            "exponent",
            "--T",
            "0",
            "--Lambda",
            "25",
            "--lambda0-grid",
            "log:1:1e-8:9",
        ],
    },
    GoldenCase {
        name: "exponent_T_room",
        args: &[
            "exponent",
            "--T",
            "0.025",
            "--Lambda",
            "25",
            "--lambda0-grid",
            "log:2.5e-4:2.5e-10:7",
        ],
    },
    GoldenCase {
        name: "field_profile",
        args: &[
            "field-profile",
            "--lambda0",
            "1e-6",
            "--T",
            "0.025",
            "--Lambda",
            "25",
            "--a",
            "0",
            "--r-grid",
            "log:1e-9:1e-3:50",
        ],
    },
    GoldenCase {
        name: "nullification_scan",
        args: &[
            "nullification-scan",
            "--T",
            "0.025",
            "--Lambda",
            "25",
            "--r",
            "2e-5",
            "--lambda0-grid",
            "log:2.5e-4:2.5e-14:11",
        ],
    },
    GoldenCase {
        name: "timescale_zero_T",
        args: &["timescale", "--regime", "zero-T", "--format", "csv"],
    },
    GoldenCase {
        name: "timescale_finite_T",
        args: &[
            "timescale",
            "--regime",
            "finite-T",
            "--T",
            "0.02525",
            "--r-grid",
            "1e-6,1e-4,1e-2",
            "--format",
            "csv",
        ],
    },
];

pub fn column_tolerance(column: &str) -> f64 {
    if INPUT_COLUMNS.contains(&column) {
        GOLDEN_INPUT_REL_TOL
    } else {
        GOLDEN_REL_TOL
    }
}

#[derive(Debug, Serialize)]
struct Manifest {
    version: &'static str,
    seed: u64,
    tolerance_abs: f64,
    cases: Vec<ManifestEntry>,
}

#[derive(Debug, Serialize)]
struct ManifestEntry {
    name: &'static str,
    file: String,
    args: &'static [&'static str],
    /// Relative tolerance per column.
    tolerances: BTreeMap<String, f64>,
}

/// Largest relative change seen in one column.
#[derive(Clone, Debug, PartialEq)]
pub struct ColumnDrift {
    pub column: String,
    pub max_rel: f64,
}

impl ColumnDrift {
    pub fn within_tolerance(&self) -> bool {
        self.max_rel <= column_tolerance(&self.column)
    }
}

pub fn within_tolerance(drifts: &[ColumnDrift]) -> bool {
    drifts.iter().all(ColumnDrift::within_tolerance)
}

pub fn default_dir() -> PathBuf {
    PathBuf::from(concat!(env!("CARGO_MANIFEST_DIR"), "/goldens"))
}

/// CSV produced by a golden invocation, computed in-process.
pub fn render_case(case: &GoldenCase) -> Result<String, CliError> {
    let argv = std::iter::once("irfield").chain(case.args.iter().copied());
    let cli = Cli::try_parse_from(argv).map_err(|e| CliError::config("args", e.to_string()))?;
    let config = RunConfig::from_cli(&cli)?;
    Ok(run(&config)?.table.to_csv())
}

/// Per-column largest relative difference between two CSV payloads, or why
/// they cannot be compared cell by cell.
pub fn compare_csv(expected: &str, actual: &str) -> Result<Vec<ColumnDrift>, String> {
    let a = ParsedCsv::parse(expected)?;
    let b = ParsedCsv::parse(actual)?;
    if a.columns != b.columns {
        return Err(format!(
            "columns differ: {:?} vs {:?}",
            a.columns, b.columns
        ));
    }
    if a.rows.len() != b.rows.len() {
        return Err(format!("row count {} vs {}", a.rows.len(), b.rows.len()));
    }
    let mut worst = vec![0.0f64; a.columns.len()];
    for (i, (ra, rb)) in a.rows.iter().zip(&b.rows).enumerate() {
        for (j, (x, y)) in ra.iter().zip(rb).enumerate() {
            match (x.parse::<f64>(), y.parse::<f64>()) {
                (Ok(x), Ok(y)) => {
                    let diff = (x - y).abs();
                    if diff > GOLDEN_ABS_FLOOR {
                        worst[j] = worst[j].max(diff / x.abs().max(y.abs()));
                    }
                }
                _ if x == y => {}
                _ => {
                    return Err(format!(
                        "row {} column `{}`: `{x}` vs `{y}`",
                        i + 1,
                        a.columns[j]
                    ))
                }
            }
        }
    }
    Ok(a.columns
        .into_iter()
        .zip(worst)
        .map(|(column, max_rel)| ColumnDrift { column, max_rel })
        .collect())
}

fn write(path: &Path, text: &str) -> Result<(), CliError> {
    fs::write(path, text).map_err(|e| CliError::io(path, e))
}

pub fn regenerate_command(config: &RunConfig) -> Result<RunReport, CliError> {
    let dir = config.goldens_dir.clone().unwrap_or_else(default_dir);
    let filter = config
        .golden_filter
        .as_deref()
        .map(glob::Pattern::new)
        .transpose()
        .map_err(|e| CliError::config("filter", e.to_string()))?;
    fs::create_dir_all(&dir).map_err(|e| CliError::io(&dir, e))?;

    // unchanged cases are omitted, so an unchanged build yields an empty diff
    let mut table = Table::new(&["case", "status", "max_rel_change", "column"]);
    let mut rewritten = Vec::new();
    for case in CASES {
        if filter.as_ref().is_some_and(|p| !p.matches(case.name)) {
            continue;
        }
        let fresh = render_case(case)?;
        let path = dir.join(case.file_name());
        let row: Option<(&str, Cell, Cell)> = match fs::read_to_string(&path) {
            Ok(old) => match compare_csv(&old, &fresh) {
                Ok(drifts) => {
                    let worst = drifts
                        .iter()
                        .max_by(|a, b| a.max_rel.total_cmp(&b.max_rel))
                        .filter(|d| d.max_rel > 0.0);
                    worst.map(|d| {
                        let status = if within_tolerance(&drifts) {
                            "within_tolerance"
                        } else {
                            "changed"
                        };
                        (status, Cell::Num(d.max_rel), Cell::Text(d.column.clone()))
                    })
                }
                Err(reason) => Some(("restructured", Cell::Missing, Cell::Text(reason))),
            },
            Err(_) => Some(("new", Cell::Missing, Cell::Missing)),
        };
        write(&path, &fresh)?;
        rewritten.push(case.name);
        match row {
            Some((status, change, column)) => {
                log::info!("{}: {status}", case.name);
                table.push(vec![case.name.into(), status.into(), change, column]);
            }
            None => log::info!("{}: unchanged", case.name),
        }
    }

    let manifest = Manifest {
        version: env!("CARGO_PKG_VERSION"),
        seed: GOLDEN_SEED,
        tolerance_abs: GOLDEN_ABS_FLOOR,
        cases: CASES
            .iter()
            .map(|c| {
                let header = fs::read_to_string(dir.join(c.file_name()))
                    .ok()
                    .and_then(|t| t.lines().next().map(str::to_owned))
                    .unwrap_or_default();
                ManifestEntry {
                    name: c.name,
                    file: c.file_name(),
                    args: c.args,
                    tolerances: header
                        .split(',')
                        .filter(|h| !h.is_empty())
                        .map(|h| (h.to_owned(), column_tolerance(h)))
                        .collect(),
                }
            })
            .collect(),
    };
    let mut text = serde_json::to_string_pretty(&manifest).expect("manifest serializes");
    text.push('\n');
    write(&dir.join(MANIFEST_FILE), &text)?;

    let mut report = RunReport::from_table(config, "golden_corpus", table);
    report.summary = serde_json::json!({ "rewritten": rewritten });
    Ok(report)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn compare_detects_drift() {
        let a = "x,y\n1.0,a\n2.0,b\n";
        assert!(compare_csv(a, a).unwrap().iter().all(|d| d.max_rel == 0.0));
        let b = "x,y\n1.0,a\n2.000001,b\n";
        let drift = compare_csv(a, b).unwrap();
        assert!((drift[0].max_rel - 5e-7).abs() < 1e-12);
        assert!(!within_tolerance(&drift));
        assert!(compare_csv(a, "x,y\n1.0,a\n2.0,c\n").is_err());
        assert!(compare_csv(a, "x,z\n1.0,a\n2.0,b\n").is_err());
        assert!(compare_csv(a, "x,y\n1.0,a\n").is_err());
    }

    #[test]
    fn empty_cells_match() {
        assert!(within_tolerance(
            &compare_csv("a,b\n,1\n", "a,b\n,1\n").unwrap()
        ));
    }

    #[test]
    fn input_columns_are_tighter() {
        assert_eq!(column_tolerance("lambda0_eV"), GOLDEN_INPUT_REL_TOL);
        assert_eq!(column_tolerance("S"), GOLDEN_REL_TOL);
    }

    #[test]
    fn case_names_unique() {
        let mut names: Vec<_> = CASES.iter().map(|c| c.name).collect();
        names.sort_unstable();
        names.dedup();
        assert_eq!(names.len(), CASES.len());
    }
}
