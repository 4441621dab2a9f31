//! End-to-end checks of the command-line surface: exit codes, output
//! shapes, determinism, cache behavior.

use std::path::PathBuf;
use std::process::{Command, Output};

fn discvar(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_discvar"))
        .args(args)
        .env_remove("DISCVAR_CACHE_DIR")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8_lossy(&out.stdout).into_owned()
}

#[test]
fn help_lists_subcommands() {
    let out = discvar(&["--help"]);
    assert!(out.status.success());
    let text = stdout(&out);
    for sub in ["derive", "orbit-eqs", "one-orbit", "verify", "sample", "singularity"] {
        assert!(text.contains(sub), "help lacks {sub}");
    }
}

#[test]
fn validation_errors_exit_two() {
    assert_eq!(discvar(&["derive", "--n", "2"]).status.code(), Some(2));
    assert_eq!(
        discvar(&["orbit-eqs", "--eigs", "1,2,3"]).status.code(),
        Some(2)
    );
    assert_eq!(
        discvar(&["orbit-eqs", "--eigs", "1,1/0,2"]).status.code(),
        Some(2)
    );
    // unknown flags are clap validation failures
    assert_eq!(discvar(&["derive", "--frobnicate"]).status.code(), Some(2));
}

#[test]
fn orbit_eqs_prints_reference_system() {
    let out = discvar(&["orbit-eqs", "--eigs", "1,1,-2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("x11 +x22 +x33"));
    assert!(text.contains("x23^2"));
}

#[test]
fn one_orbit_modes() {
    let sym = discvar(&["one-orbit"]);
    assert!(sym.status.success());
    assert!(stdout(&sym).contains("k^2+1"));

    let zero = discvar(&["one-orbit", "--k", "0"]);
    assert!(zero.status.success());
    let text = stdout(&zero);
    assert!(text.contains("x23^2 +x33^2 +x33 -2"));

    let inf = discvar(&["one-orbit", "--k-infinity"]);
    assert!(inf.status.success());
    let text = stdout(&inf);
    assert!(text.contains("x13^2 +x33^2 +x33 -2"));
    assert!(text.contains("x22 -1"));

    // the modes exclude each other
    assert_eq!(
        discvar(&["one-orbit", "--k", "1", "--symbolic"]).status.code(),
        Some(2)
    );
}

#[test]
fn singularity_json_is_deterministic() {
    let a = discvar(&["singularity", "--json"]);
    let b = discvar(&["singularity", "--json"]);
    assert!(a.status.success());
    assert_eq!(stdout(&a), stdout(&b));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&a)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["all_pass"], true);
}

#[test]
fn size_four_attempt_aborts_cleanly() {
    let out = discvar(&["derive", "--n", "4", "--max-pairs", "300"]);
    assert_eq!(out.status.code(), Some(1));
    let err = String::from_utf8_lossy(&out.stderr);
    assert!(err.contains("resource limit exceeded"), "stderr: {err}");
    assert!(err.contains("pairs_processed"), "stderr: {err}");
}

#[test]
fn sample_writes_point_cloud_with_residuals() {
    let dir = std::env::temp_dir().join(format!("discvar-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let out_path: PathBuf = dir.join("cloud.json");
    let out = discvar(&[
        "sample",
        "--eigs",
        "1,1,-2",
        "--count",
        "8",
        "--seed",
        "7",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&out_path).unwrap()).unwrap();
    assert_eq!(doc["schema"], 1);
    let points = doc["points"].as_array().unwrap();
    assert_eq!(points.len(), 9); // the base point plus the samples
    for p in points {
        let x = p["x"].as_array().unwrap();
        assert_eq!(x.len(), 6);
        for r in p["residuals"].as_array().unwrap() {
            assert!(r.as_f64().unwrap().abs() < 1e-9);
        }
    }
    let _ = std::fs::remove_dir_all(dir);
}

#[test]
fn verify_battery_passes_end_to_end() {
    let out = discvar(&[
        "verify", "--n", "3", "--seed", "1", "--samples", "100", "--deep",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.contains("PASS:"), "missing summary: {text}");
    assert!(!text.contains("[FAIL]"), "unexpected failure: {text}");
    assert!(text.contains("disc | g^2"), "probe missing: {text}");
}

#[test]
fn derive_cache_roundtrip_is_identical() {
    let dir = std::env::temp_dir().join(format!("discvar-cache-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let cache = dir.to_str().unwrap();
    let cold = discvar(&["derive", "--n", "3", "--json", "--cache-dir", cache]);
    assert!(cold.status.success());
    let warm = discvar(&["derive", "--n", "3", "--json", "--cache-dir", cache]);
    assert!(warm.status.success());
    assert_eq!(stdout(&cold), stdout(&warm));
    let doc: serde_json::Value = serde_json::from_str(&stdout(&cold)).unwrap();
    assert_eq!(doc["schema"], 1);
    assert_eq!(doc["rels_simplified"]["gens"].as_array().unwrap().len(), 5);
    assert!(doc["checks"]
        .as_array()
        .unwrap()
        .iter()
        .all(|c| c["pass"] == true));
    // at least one cache file appeared
    assert!(std::fs::read_dir(&dir).unwrap().count() >= 1);
    let _ = std::fs::remove_dir_all(dir);
}
