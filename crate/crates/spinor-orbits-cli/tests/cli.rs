//! End-to-end tests of the command-line binary: exit codes, determinism,
//! and output shapes.

use std::path::{Path, PathBuf};
use std::process::{Command, Output};

fn bin() -> Command {
    Command::new(env!("CARGO_BIN_EXE_spinor-orbits"))
}

fn fixture(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("fixtures").join(name)
}

fn run(args: &[&str]) -> Output {
    let mut cmd = bin();
    for a in args {
        cmd.arg(a);
    }
    cmd.output().expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

#[test]
fn classify_representative_fixtures() {
    for (name, label) in [
        ("r1_pure_iso.json", "R1PureIso"),
        ("r1_pure_non_iso.json", "R1PureNonIso"),
        ("r1_impure.json", "R1Impure"),
        ("r2_line.json", "R2Line"),
        ("r2_two_points.json", "R2TwoPoints"),
        ("r2_tangent.json", "R2Tangent"),
    ] {
        let out = run(&["classify", fixture(name).to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
        assert_eq!(report["label"], label, "{name}");
    }
}

#[test]
fn classify_zero_supercharge() {
    let out = run(&["classify", fixture("zero.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report: serde_json::Value = serde_json::from_str(&stdout_of(&out)).unwrap();
    assert_eq!(report["label"], "Zero");
    assert_eq!(report["stabilizer_dim"], 47);
}

#[test]
fn classify_text_format() {
    let out = run(&[
        "classify",
        fixture("r2_tangent.json").to_str().unwrap(),
        "--format",
        "text",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout_of(&out);
    assert!(text.contains("label: R2Tangent"));
    assert!(text.contains("pattern: OnePoint"));
    assert!(text.contains("projective_orbit_dim: 21"));
    assert!(text.contains("e23^"), "spinors render in monomial notation: {text}");
}

#[test]
fn classify_parse_error_is_exit_2() {
    let dir = tempfile::tempdir().unwrap();
    let bad = dir.path().join("bad.json");
    std::fs::write(&bad, "{\"columns\": oops").unwrap();
    let out = run(&["classify", bad.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));

    let missing = dir.path().join("missing.json");
    let out = run(&["classify", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn classify_non_square_zero_is_exit_3_with_bracket() {
    let out = run(&["classify", fixture("non_square_zero.json").to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let err = String::from_utf8(out.stderr).unwrap();
    assert!(err.contains("[Q,Q]"), "{err}");
    assert!(err.contains("e1"), "bracket is a multiple of e1: {err}");
}

#[test]
fn verify_table_passes_in_both_orientations() {
    for orientation in ["calibrated", "flipped"] {
        let out = run(&["verify-table", "--orientation", orientation]);
        assert_eq!(out.status.code(), Some(0), "{orientation}");
        let text = stdout_of(&out);
        assert!(text.contains("6/6 rows verified"), "{text}");
    }
}

#[test]
fn verify_table_corrupted_fixture_is_exit_1_naming_the_row() {
    let dir = tempfile::tempdir().unwrap();
    for name in [
        "r1_pure_iso.json",
        "r1_pure_non_iso.json",
        "r1_impure.json",
        "r2_line.json",
        "r2_two_points.json",
        "r2_tangent.json",
    ] {
        std::fs::copy(fixture(name), dir.path().join(name)).unwrap();
    }
    // replace the two-points fixture with a line-orbit member
    std::fs::copy(fixture("r2_line.json"), dir.path().join("r2_two_points.json")).unwrap();

    let out = run(&["verify-table", "--fixtures", dir.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout_of(&out);
    assert!(text.contains("row R2TwoPoints: FAILED"), "{text}");
    assert!(text.contains("row R2Line: ok"), "{text}");
}

#[test]
fn unknown_flags_are_rejected() {
    let out = run(&["verify-table", "--frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["classify", fixture("zero.json").to_str().unwrap(), "--fast"]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn emit_ideal_writes_ten_quadratic_lines() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("ideal.txt");
    let out = run(&["emit-ideal", path.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let text = std::fs::read_to_string(&path).unwrap();
    let lines: Vec<&str> = text.lines().collect();
    assert_eq!(lines.len(), 10);
    for line in lines {
        assert!(line.contains("q_{"), "{line}");
        assert!(line.contains('*') || line.contains("^2"), "{line}");
    }
}

#[test]
fn sample_is_deterministic_and_reclassified() {
    let a = run(&["sample", "R2Tangent", "--count", "4", "--seed", "11"]);
    let b = run(&["sample", "R2Tangent", "--count", "4", "--seed", "11"]);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout, "same seed, same bytes");

    let c = run(&["sample", "R2Tangent", "--count", "4", "--seed", "12"]);
    assert_ne!(a.stdout, c.stdout, "different seed, different samples");

    let text = stdout_of(&a);
    assert_eq!(text.lines().count(), 4);
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).unwrap();
        assert_eq!(v["report"]["label"], "R2Tangent");
        // round-trip: the embedded supercharge re-parses to the same value
        let q: spinor_orbits::Supercharge =
            serde_json::from_value(v["supercharge"].clone()).unwrap();
        assert_eq!(serde_json::to_value(&q).unwrap(), v["supercharge"]);
    }
}

#[test]
fn sample_rejects_unknown_label_and_zero() {
    let out = run(&["sample", "R3Huge", "--count", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(2));
    let out = run(&["sample", "Zero", "--count", "1", "--seed", "0"]);
    assert_eq!(out.status.code(), Some(3));
}

#[test]
fn closure_scan_golden_transitions() {
    let cases: [(&str, &str, &[&str]); 3] = [
        ("pencil_pure_to_line.json", "0,1,2", &["R1PureNonIso", "R2Line", "R2Line"]),
        ("pencil_pure_to_impure.json", "0,1", &["R1PureIso", "R1Impure"]),
        ("pencil_pure_to_tangent.json", "0,1", &["R1PureNonIso", "R2Tangent"]),
    ];
    for (name, ts, labels) in cases {
        let out = run(&["closure-scan", fixture(name).to_str().unwrap(), "--t", ts]);
        assert_eq!(out.status.code(), Some(0), "{name}");
        let got: Vec<String> = stdout_of(&out)
            .lines()
            .map(|l| {
                let v: serde_json::Value = serde_json::from_str(l).unwrap();
                v["label"].as_str().unwrap().to_string()
            })
            .collect();
        assert_eq!(got, labels, "{name}");
    }
}

#[test]
fn closure_scan_flags_bad_members_per_entry() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("pencil.json");
    // base 1⊗(1,0) is square-zero; direction e2345⊗(1,0) breaks it for t≠0
    std::fs::write(
        &path,
        "{\"base\":{\"columns\":[{\"\":\"1/1\"},{}]},\"direction\":{\"columns\":[{\"2345\":\"1/1\"},{}]}}",
    )
    .unwrap();
    let out = run(&["closure-scan", path.to_str().unwrap(), "--t", "0,1"]);
    assert_eq!(out.status.code(), Some(0), "per-entry errors do not abort");
    let lines: Vec<serde_json::Value> = stdout_of(&out)
        .lines()
        .map(|l| serde_json::from_str(l).unwrap())
        .collect();
    assert_eq!(lines[0]["label"], "R1PureNonIso");
    assert!(lines[1]["error"].as_str().unwrap().contains("square"), "{:?}", lines[1]);
}

#[test]
fn closure_scan_rejects_bad_scalars() {
    let out = run(&[
        "closure-scan",
        fixture("pencil_pure_to_line.json").to_str().unwrap(),
        "--t",
        "0,banana",
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn fixtures_round_trip_bit_exactly() {
    for name in [
        "r1_pure_iso.json",
        "r1_pure_non_iso.json",
        "r1_impure.json",
        "r2_line.json",
        "r2_two_points.json",
        "r2_tangent.json",
        "zero.json",
        "non_square_zero.json",
    ] {
        let text = std::fs::read_to_string(fixture(name)).unwrap();
        let q: spinor_orbits::Supercharge = serde_json::from_str(&text).unwrap();
        assert_eq!(serde_json::to_string(&q).unwrap(), text.trim_end(), "{name}");
    }
}
