//! End-to-end tests of the binary: output shapes and exit codes.

use std::io::Write;
use std::process::{Command, Output};

fn drg(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_drg"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    let text = String::from_utf8_lossy(&out.stdout);
    serde_json::from_str(text.lines().next().expect("nonempty stdout")).expect("valid JSON")
}

#[test]
fn analyze_petersen_reports_bounds() {
    let out = drg(&["analyze", "petersen"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["motion"]["dmin"], 6);
    assert!(doc["motion"]["spectral_bound"].as_f64().unwrap().abs() < 1e-9);
    assert_eq!(doc["primitive"], true);
    assert_eq!(doc["parameters"]["n"], 10);
}

#[test]
fn analyze_rejects_infeasible_file_with_exit_1() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "{{\"b\": [5, 4], \"c\": [1, 3]}}").unwrap();
    let out = drg(&["analyze", "--file", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("NonIntegralDistanceDegree"), "{err}");
    assert!(out.stdout.is_empty(), "no partial JSON on failure");
}

#[test]
fn analyze_heawood_imprimitive_gives_twelfth_bound() {
    let out = drg(&["analyze", "heawood", "--imprimitive"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    let verdict = &doc["reduction"]["bipartite_d3"]["verdict"];
    assert_eq!(verdict["kind"], "MotionBound");
    assert!((verdict["bound"].as_f64().unwrap() - 14.0 / 12.0).abs() < 1e-9);
    assert_eq!(doc["reduction"]["halved"]["kind"], "Complete");
}

#[test]
fn analyze_accepts_inline_json() {
    let out = drg(&["analyze", r#"{"b": [3, 2], "c": [1, 1]}"#]);
    assert!(out.status.success());
    assert_eq!(stdout_json(&out)["id"], "inline");
}

#[test]
fn analyze_rejects_malformed_inline_json() {
    for bad in [
        r#"{"b": [3, -2], "c": [1, 1]}"#,   // negative entry
        r#"{"b": [3, 2]}"#,                 // missing c
        r#"{"b": [3, 2], "c": [2, 2]}"#,    // c_1 != 1
        r#"{"b": [0, 0], "c": [1, 1]}"#,    // zero b
        r#"{"b": [3.5, 2], "c": [1, 1]}"#,  // non-integer
    ] {
        let out = drg(&["analyze", bad]);
        assert_eq!(out.status.code(), Some(1), "{bad}");
        assert!(out.stdout.is_empty());
    }
}

#[test]
fn verify_tradeoff_is_green_and_deterministic() {
    let out = drg(&["verify", "tradeoff"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    let last = text.lines().last().unwrap();
    let summary: serde_json::Value = serde_json::from_str(last).unwrap();
    assert_eq!(summary["failed"], 0);

    let again = drg(&["verify", "tradeoff"]);
    assert_eq!(out.stdout, again.stdout, "byte-identical across runs");
}

#[test]
fn verify_unknown_suite_is_input_error() {
    assert_eq!(drg(&["verify", "nonsense"]).status.code(), Some(1));
}

#[test]
fn oracle_motion_and_quotients() {
    let out = drg(&["oracle", "petersen", "--motion"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["automorphisms"]["order"], 120);
    assert_eq!(doc["automorphisms"]["motion"], 6);
    assert_eq!(doc["distinguishing"]["dmin"], 6);

    let out = drg(&["oracle", "cube", "--fold"]);
    let doc = stdout_json(&out);
    assert_eq!(doc["folded"]["shape"]["kind"], "complete");
    assert_eq!(doc["folded"]["shape"]["n"], 4);
}

#[test]
fn oracle_edge_list_with_witness() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    writeln!(f, "0 1\n1 2\n2 3").unwrap();
    let out = drg(&["oracle", f.path().to_str().unwrap(), "--check-array"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["distance_regular"]["holds"], false);
    assert!(doc["distance_regular"]["witness"]
        .as_str()
        .unwrap()
        .contains("not distance-regular"));
}

#[test]
fn oracle_size_cap_is_exit_3() {
    assert_eq!(drg(&["--max-n", "10", "oracle", "heawood"]).status.code(), Some(3));
}

#[test]
fn family_cross_checks_closed_forms() {
    let out = drg(&["family", "hamming", "3", "2"]);
    assert!(out.status.success());
    let doc = stdout_json(&out);
    assert_eq!(doc["cross_check"], true);
    assert_eq!(doc["n"], 8);

    assert_eq!(drg(&["family", "johnson", "4", "2"]).status.code(), Some(1));
}

#[test]
fn pretty_mode_renders_text() {
    let out = drg(&["analyze", "petersen", "--pretty"]);
    assert!(out.status.success());
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.contains("parameters"));
    assert!(!text.trim_start().starts_with('{'));
}

#[test]
fn spectrum_cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let run = || {
        Command::new(env!("CARGO_BIN_EXE_drg"))
            .env("DRG_SPECTRUM_CACHE_DIR", dir.path())
            .args(["analyze", "icosahedron"])
            .output()
            .expect("binary runs")
    };
    let first = run();
    assert!(first.status.success());
    assert!(std::fs::read_dir(dir.path()).unwrap().count() > 0, "cache file written");
    let second = run();
    assert_eq!(first.stdout, second.stdout);
}
