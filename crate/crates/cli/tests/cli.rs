//! End-to-end checks of the `qtwirl` binary: JSON outputs, golden CSVs,
//! and exit codes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_qtwirl"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
}

fn golden(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn temp_path(name: &str) -> PathBuf {
    let mut p = std::env::temp_dir();
    p.push(format!("qtwirl-test-{}-{name}", std::process::id()));
    p
}

fn stdout_json(output: &Output) -> Value {
    assert!(
        output.status.success(),
        "stderr: {}",
        String::from_utf8_lossy(&output.stderr)
    );
    serde_json::from_slice(&output.stdout).expect("stdout is JSON")
}

#[test]
fn measure_singlet_corner() {
    let out = bin()
        .args(["measure", "--n", "3", "--alpha", "0", "--gamma", "1"])
        .output()
        .unwrap();
    let json = stdout_json(&out);
    assert_eq!(json["negativity_closed"], 1.0);
    assert_eq!(json["region"], "npt_entangled");
    assert_eq!(json["eof_exact"], 1.0);
}

#[test]
fn twirl_fixture_is_fixed_point() {
    let out = bin()
        .args(["twirl", "--n", "3", "--input"])
        .arg(fixture("varrho_n3_gamma05.json"))
        .output()
        .unwrap();
    let json = stdout_json(&out);
    assert!(json["class_residual"].as_f64().unwrap() <= 1e-10);
    assert!((json["alpha"].as_f64().unwrap() - 0.25).abs() < 1e-12);
    assert!((json["gamma"].as_f64().unwrap() - 0.5).abs() < 1e-12);
    assert_eq!(json["matrix"]["dim"], 6);
}

#[test]
fn twirl_monte_carlo_mode() {
    let out = bin()
        .args(["twirl", "--n", "3", "--mc-samples", "400", "--seed", "11", "--input"])
        .arg(fixture("varrho_n3_gamma05.json"))
        .output()
        .unwrap();
    let json = stdout_json(&out);
    // Family members are fixed by every sampled conjugation.
    assert!(json["class_residual"].as_f64().unwrap() <= 1e-12);

    // Without --seed the stochastic mode is rejected.
    let out = bin()
        .args(["twirl", "--n", "3", "--mc-samples", "400", "--input"])
        .arg(fixture("varrho_n3_gamma05.json"))
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn roof_fixture_recovers_gamma() {
    let out = bin()
        .args(["roof", "--k", "3", "--restarts", "20", "--seed", "7", "--input"])
        .arg(fixture("varrho_n3_gamma05.json"))
        .output()
        .unwrap();
    let json = stdout_json(&out);
    assert!((json["estimate"].as_f64().unwrap() - 0.5).abs() <= 1e-3);
    assert!(json["iterations"].as_u64().unwrap() >= 1);
}

#[test]
fn invariance_distinguishes_class_from_pure() {
    let out = bin()
        .args(["invariance", "--n", "3", "--samples", "50", "--seed", "3", "--input"])
        .arg(fixture("varrho_n3_gamma05.json"))
        .output()
        .unwrap();
    assert!(stdout_json(&out)["max_deviation"].as_f64().unwrap() <= 1e-10);

    let out = bin()
        .args(["invariance", "--n", "3", "--samples", "50", "--seed", "3", "--input"])
        .arg(fixture("ket00_n3.json"))
        .output()
        .unwrap();
    assert!(stdout_json(&out)["max_deviation"].as_f64().unwrap() > 0.1);
}

#[test]
fn sweep_reproduces_golden_files_byte_for_byte() {
    let cases = [
        ("fig1_negativity_n4.csv", "negativity", None),
        ("fig3_eof_lower_n4.csv", "eof-lower", Some("npt")),
        ("fig4_eof_upper_n4.csv", "eof-upper", Some("npt")),
    ];
    for (name, quantity, filter) in cases {
        let out_path = temp_path(name);
        let mut cmd = bin();
        cmd.args([
            "sweep",
            "--n",
            "4",
            "--quantity",
            quantity,
            "--alpha-steps",
            "41",
            "--gamma-steps",
            "41",
        ]);
        if let Some(filter) = filter {
            cmd.args(["--region-filter", filter]);
        }
        cmd.arg("--out").arg(&out_path);
        let output = cmd.output().unwrap();
        assert!(output.status.success(), "{name}");
        let produced = std::fs::read(&out_path).unwrap();
        let expected = std::fs::read(golden(name)).unwrap();
        assert_eq!(produced, expected, "{name} drifted from its golden file");
        std::fs::remove_file(&out_path).ok();
    }
}

#[test]
fn sweep_rows_match_library_calls_bitwise() {
    let text = std::fs::read_to_string(golden("fig1_negativity_n4.csv")).unwrap();
    let mut rows = 0;
    for line in text.lines().skip(1) {
        let mut cols = line.split(',');
        let alpha: f64 = cols.next().unwrap().parse().unwrap();
        let gamma: f64 = cols.next().unwrap().parse().unwrap();
        let value = cols.next().unwrap();
        let direct = qtwirl_core::negativity_closed_form(4, alpha, gamma).unwrap();
        assert_eq!(value, format!("{direct:.16e}"), "row ({alpha}, {gamma})");
        rows += 1;
    }
    assert_eq!(rows, 861); // admissible points of the 41×41 grid
}

#[test]
fn region_sweep_labels() {
    let out_path = temp_path("region.csv");
    let output = bin()
        .args([
            "sweep", "--n", "4", "--quantity", "region", "--alpha-steps", "5",
            "--gamma-steps", "5",
        ])
        .arg("--out")
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(output.status.success());
    let text = std::fs::read_to_string(&out_path).unwrap();
    assert!(text.contains("ppt_separable"));
    assert!(text.contains("npt_entangled"));
    std::fs::remove_file(&out_path).ok();
}

#[test]
fn exit_codes() {
    // Usage error: unknown flag.
    let out = bin().args(["measure", "--bogus"]).output().unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Validation error: inadmissible parameters.
    let out = bin()
        .args(["measure", "--n", "3", "--alpha", "0", "--gamma", "2"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));

    // Missing input file: I/O failure.
    let out = bin()
        .args(["twirl", "--n", "3", "--input", "/no/such/file.json"])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Malformed matrix JSON: validation failure.
    let bad = temp_path("bad.json");
    std::fs::write(&bad, "{not json").unwrap();
    let out = bin()
        .args(["twirl", "--n", "3", "--input"])
        .arg(&bad)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&bad).ok();

    // Wrong dimension count inside valid JSON: validation failure.
    let short = temp_path("short.json");
    std::fs::write(&short, r#"{"dim": 6, "entries": [[1.0, 0.0]]}"#).unwrap();
    let out = bin()
        .args(["twirl", "--n", "3", "--input"])
        .arg(&short)
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
    std::fs::remove_file(&short).ok();

    // Unwritable output path: I/O failure.
    let out = bin()
        .args([
            "sweep", "--n", "4", "--quantity", "negativity", "--out",
            "/no/such/dir/grid.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(2));

    // Help exits 0.
    let out = bin().arg("--help").output().unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("sweep"));

    // Degenerate grid is rejected.
    let out = bin()
        .args([
            "sweep", "--n", "4", "--quantity", "negativity", "--alpha-steps", "1",
            "--gamma-steps", "5", "--out", "/tmp/unused.csv",
        ])
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn measure_writes_to_file() {
    let out_path = temp_path("report.json");
    let output = bin()
        .args(["measure", "--n", "4", "--alpha", "0.05", "--gamma", "0.7", "--out"])
        .arg(&out_path)
        .output()
        .unwrap();
    assert!(output.status.success());
    let json: Value = serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(json["region"], "npt_entangled");
    std::fs::remove_file(&out_path).ok();
}
