use std::fs;

use irfield_cli::goldens::{
    compare_csv, default_dir, render_case, within_tolerance, CASES, MANIFEST_FILE,
};

#[test]
fn corpus_matches_current_output() {
    let dir = default_dir();
    for case in CASES {
        let path = dir.join(case.file_name());
        let stored =
            fs::read_to_string(&path).unwrap_or_else(|e| panic!("{}: {e}", path.display()));
        let fresh = render_case(case).unwrap();
        let drift = compare_csv(&stored, &fresh).unwrap_or_else(|e| panic!("{}: {e}", case.name));
        assert!(
            within_tolerance(&drift),
            "{}: drift {drift:?}",
            case.name
        );
    }
}

#[test]
fn manifest_lists_every_case() {
    let text = fs::read_to_string(default_dir().join(MANIFEST_FILE)).unwrap();
    let manifest: serde_json::Value = serde_json::from_str(&text).unwrap();
    let names: Vec<&str> = manifest["cases"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["name"].as_str().unwrap())
        .collect();
    let expected: Vec<&str> = CASES.iter().map(|c| c.name).collect();
    assert_eq!(names, expected);
    assert_eq!(manifest["version"], env!("CARGO_PKG_VERSION"));
}

#[test]
fn regeneration_into_scratch_dir_is_stable() {
    let dir = tempfile::tempdir().unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_irfield"))
        .args([
            "regenerate-goldens",
            "--filter",
            "timescale*",
            "--goldens-dir",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    assert!(out.status.success());
    let first = String::from_utf8(out.stdout).unwrap();
    assert!(first.contains("timescale_zero_T,new"));
    assert!(!first.contains("exponent"));

    let out = std::process::Command::new(env!("CARGO_BIN_EXE_irfield"))
        .args([
            "regenerate-goldens",
            "--filter",
            "timescale*",
            "--goldens-dir",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    let second = String::from_utf8(out.stdout).unwrap();
    assert_eq!(second, "case,status,max_rel_change,column\n");

    // a perturbed file shows up in the diff and is restored
    let path = dir.path().join("timescale_finite_T.csv");
    let text = std::fs::read_to_string(&path).unwrap();
    std::fs::write(
        &path,
        text.replacen("1.1288786566982414e2", "1.1288786566982000e2", 1),
    )
    .unwrap();
    let out = std::process::Command::new(env!("CARGO_BIN_EXE_irfield"))
        .args([
            "regenerate-goldens",
            "--filter",
            "timescale*",
            "--goldens-dir",
        ])
        .arg(dir.path())
        .output()
        .unwrap();
    let third = String::from_utf8(out.stdout).unwrap();
    assert!(
        third.contains("timescale_finite_T,within_tolerance"),
        "{third}"
    );
    assert!(third.ends_with(",tau_s\n"));
    assert_eq!(std::fs::read_to_string(&path).unwrap(), text);
}
