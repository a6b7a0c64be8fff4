use std::process::{Command, Output};

use irfield_cli::table::ParsedCsv;

fn irfield(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_irfield"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn field_profile_has_one_row_per_radius() {
    let out = irfield(&[
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
    ]);
    assert_eq!(out.status.code(), Some(0));
    let csv = ParsedCsv::parse(&stdout(&out)).unwrap();
    assert_eq!(csv.columns, ["r_eV_inv", "S", "Q_frac"]);
    assert_eq!(csv.rows.len(), 50);
    let s = csv.column("S").unwrap();
    let values: Vec<f64> = (0..50)
        .map(|i| csv.number(i, s).unwrap().unwrap())
        .collect();
    assert!(values.windows(2).all(|w| w[1] >= w[0]));
    assert!(values.iter().all(|v| (0.0..=1.0).contains(v)));
}

#[test]
fn output_is_byte_identical_across_runs() {
    let args = [
        "sweep",
        "--lambda0-grid",
        "log:1e-4:1e-8:3",
        "--T-grid",
        "0,0.01,0.025",
        "--r-grid",
        "1e-6,1e-5,1e-4",
    ];
    let a = irfield(&args);
    let b = irfield(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    assert_eq!(ParsedCsv::parse(&stdout(&a)).unwrap().rows.len(), 27);
    let json = ["verify-identities", "--seed", "3", "--n-max", "5"];
    assert_eq!(irfield(&json).stdout, irfield(&json).stdout);
}

#[test]
fn sweep_preserves_grid_order() {
    let out = irfield(&[
        "sweep",
        "--lambda0-grid",
        "1e-5,1e-7",
        "--T-grid",
        "0.02,0",
        "--r-grid",
        "1e-5",
    ]);
    let csv = ParsedCsv::parse(&stdout(&out)).unwrap();
    let key: Vec<(String, String)> = csv
        .rows
        .iter()
        .map(|r| (r[0].clone(), r[1].clone()))
        .collect();
    let num = |s: &str| s.parse::<f64>().unwrap();
    assert_eq!(key.len(), 4);
    assert_eq!((num(&key[0].0), num(&key[0].1)), (1e-5, 0.02));
    assert_eq!((num(&key[1].0), num(&key[1].1)), (1e-5, 0.0));
    assert_eq!((num(&key[3].0), num(&key[3].1)), (1e-7, 0.0));
}

#[test]
fn zero_t_timescale_json() {
    let out = irfield(&["timescale", "--regime", "zero-T"]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let log10 = doc["results"][0]["log10_tau"].as_f64().unwrap();
    assert!((log10 - 540.1).abs() < 1.0);
    assert!(doc["results"][0]["tau_s"].is_null());
    assert_eq!(doc["command"], "timescale");
    assert_eq!(doc["inputs"]["params"]["alpha"], 7.2973525693e-3);
}

#[test]
fn cutoff_regime_inverts_duration() {
    let out = irfield(&[
        "timescale",
        "--regime",
        "cutoff",
        "--tau",
        "1",
        "--format",
        "csv",
    ]);
    let csv = ParsedCsv::parse(&stdout(&out)).unwrap();
    let lambda0 = csv
        .number(0, csv.column("lambda0_eV").unwrap())
        .unwrap()
        .unwrap();
    assert!((lambda0 / 6.582119569e-16 - 1.0).abs() < 1e-15);
}

#[test]
fn verify_identities_passes_with_seed() {
    let out = irfield(&["verify-identities", "--seed", "42", "--n-max", "7"]);
    assert_eq!(
        out.status.code(),
        Some(0),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(doc["passed"], true);
    assert!(doc["results"].as_array().unwrap().len() >= 10);
}

#[test]
fn flux_reports_gauss_law() {
    let out = irfield(&[
        "flux",
        "--T",
        "0.025",
        "--r-grid",
        "log:1e-8:1e-2:7",
        "--format",
        "json",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&out)).unwrap();
    let q = doc["summary"]["Q_frac_at_r_gauss"].as_f64().unwrap();
    assert!((q - 1.0).abs() < 1e-6);
}

#[test]
fn configuration_errors_exit_2() {
    for args in [
        &["exponent", "--lambda0", "100"][..],
        &["exponent", "--alpha", "0.5"],
        &["field-profile"],
        &["field-profile", "--r-grid", "log:1:0:-3"],
        &[
            "nullification-scan",
            "--lambda0-grid",
            "1e-8,1e-6",
            "--r",
            "1",
            "--T",
            "0.025",
        ],
        &["timescale", "--regime", "finite-T", "--r", "1e-6"],
        &["timescale", "--regime", "cutoff"],
        &["verify-identities", "--n-max", "9"],
        &["exponent", "--T", "0.025", "--lambda0", "1e-2"],
    ] {
        let out = irfield(args);
        assert_eq!(
            out.status.code(),
            Some(2),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stderr)
        );
        assert!(out.stdout.is_empty(), "{args:?}");
    }
}

#[test]
fn lenient_mode_warns_instead_of_failing() {
    let args = ["exponent", "--T", "0.025", "--lambda0", "5e-3", "--lenient"];
    let out = irfield(&args);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stderr).contains("lambda0 << T"));
}

#[test]
fn out_flag_writes_file_and_reports_io_errors() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("exp.csv");
    let out = irfield(&["exponent", "--out", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(out.stdout.is_empty());
    assert!(std::fs::read_to_string(&path)
        .unwrap()
        .starts_with("lambda0_eV,"));

    let bad = dir.path().join("missing").join("x.csv");
    let out = irfield(&["exponent", "--out", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn csv_round_trips_every_double() {
    let out = irfield(&[
        "exponent",
        "--T",
        "0.025",
        "--lambda0-grid",
        "log:2.5e-4:2.5e-9:6",
    ]);
    let text = stdout(&out);
    let csv = ParsedCsv::parse(&text).unwrap();
    let mut again = csv.columns.join(",");
    again.push('\n');
    for row in 0..csv.rows.len() {
        let cells: Vec<String> = (0..csv.columns.len())
            .map(|c| irfield_cli::table::format_number(csv.number(row, c).unwrap().unwrap()))
            .collect();
        again.push_str(&cells.join(","));
        again.push('\n');
    }
    assert_eq!(again, text);
}
