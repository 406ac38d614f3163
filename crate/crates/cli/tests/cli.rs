//! End-to-end checks of the command-line interface: output schemas, exit
//! codes, determinism and JSON round trips.

use std::io::Write;
use std::process::{Command, Output};

fn majorant(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_majorant"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(args: &[&str]) -> serde_json::Value {
    let out = majorant(args);
    assert!(
        out.status.success(),
        "command failed: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON on stdout")
}

#[test]
fn compare_reports_the_order() {
    let v = stdout_json(&["compare", "--a", "0.5,0.5", "--b", "1,0"]);
    assert_eq!(v["order"], "StrictlyBelow");

    // JSON array syntax is accepted too
    let v = stdout_json(&["compare", "--a", "[0.5, 0.5]", "--b", "[1.0, 0.0]"]);
    assert_eq!(v["order"], "StrictlyBelow");

    let out = majorant(&["compare", "--a", "0.5,0.5", "--b", "1,0", "--format", "csv"]);
    assert_eq!(String::from_utf8_lossy(&out.stdout).trim(), "StrictlyBelow");
}

#[test]
fn inf_and_sup_operate_on_vector_sets() {
    let v = stdout_json(&["inf", "--vec", "0.6,0.2,0.2", "--vec", "0.5,0.4,0.1"]);
    let inf: Vec<f64> = serde_json::from_value(v["infimum"].clone()).unwrap();
    for (got, want) in inf.iter().zip([0.5, 0.3, 0.2]) {
        assert!((got - want).abs() < 1e-12);
    }
    let out = majorant(&["sup", "--vec", "0.6,0.2,0.2", "--vec", "0.5,0.4,0.1", "--format", "csv"]);
    let line = String::from_utf8_lossy(&out.stdout);
    let sup: Vec<f64> = line.trim().split(',').map(|t| t.parse().unwrap()).collect();
    for (got, want) in sup.iter().zip([0.6, 0.3, 0.1]) {
        assert!((got - want).abs() < 1e-12);
    }
}

#[test]
fn exit_codes_distinguish_usage_and_domain_errors() {
    // negative or non-finite probabilities: domain errors
    let out = majorant(&["compare", "--a", "0.5,-0.5", "--b", "1,0"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(!out.stderr.is_empty());
    let out = majorant(&["compare", "--a", "nan,1", "--b", "1,0"]);
    assert_eq!(out.status.code(), Some(1));

    // unknown subcommand and unknown scenario: usage errors
    let out = majorant(&["frobnicate"]);
    assert_eq!(out.status.code(), Some(2));
    let out = majorant(&["reproduce", "nonsense"]);
    assert_eq!(out.status.code(), Some(2));

    // missing or contradictory measurement source: usage errors
    let out = majorant(&["bound"]);
    assert_eq!(out.status.code(), Some(2));
    let out = majorant(&["bound", "--mub", "2", "--measurements", "x.json"]);
    assert_eq!(out.status.code(), Some(2));

    // an unreadable file is a domain error
    let out = majorant(&["bound", "--measurements", "does-not-exist.json"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn identical_invocations_are_byte_identical() {
    let args = ["bound", "--mub", "2", "--seed", "7", "--restarts", "16"];
    let first = majorant(&args);
    let second = majorant(&args);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);
}

#[test]
fn bound_json_schema_and_round_trip() {
    let v = stdout_json(&["bound", "--mub", "2", "--restarts", "16"]);
    assert_eq!(v["side"], "sup");
    assert!(v["common_eigenstate"].is_null());
    let bound: Vec<f64> = serde_json::from_value(v["bound"].clone()).unwrap();
    assert_eq!(bound.len(), 4);
    assert!((bound[0] - 0.728553).abs() < 1e-9, "rounded to 6 decimals");
    let witnesses = v["witnesses"].as_array().unwrap();
    assert_eq!(witnesses.len(), 4);
    assert!(witnesses[0]["bloch"].is_array(), "qubit witnesses use bloch");

    // the emitted bound is a valid vector for the vector commands
    let bound_arg = serde_json::to_string(&v["bound"]).unwrap();
    let cmp = stdout_json(&["compare", "--a", "0.25,0.25,0.25,0.25", "--b", &bound_arg]);
    assert_eq!(cmp["order"], "StrictlyBelow");
}

#[test]
fn pure_only_infimum_over_the_basis_pair() {
    let v = stdout_json(&[
        "bound", "--mub", "2", "--side", "inf", "--pure-only", "--restarts", "16",
    ]);
    assert_eq!(v["side"], "inf");
    let bound: Vec<f64> = serde_json::from_value(v["bound"].clone()).unwrap();
    // a σ_z eigenstate is pure and makes both outcomes uniform
    for b in bound {
        assert!((b - 0.25).abs() < 1e-5);
    }
    for w in v["witnesses"].as_array().unwrap() {
        assert_eq!(w["space"], "pure");
    }
}

#[test]
fn repeated_measurement_reports_common_eigenstate() {
    let v = stdout_json(&["bound", "--mub", "2", "--restarts", "8"]);
    assert!(v["common_eigenstate"].is_null());

    // sigma_x against itself shares its eigenstates
    let sx = serde_json::json!({
        "label": "sigma_x",
        "elements": [
            {"dim": 2, "entries": [[[0.5, 0.0], [0.5, 0.0]], [[0.5, 0.0], [0.5, 0.0]]]},
            {"dim": 2, "entries": [[[0.5, 0.0], [-0.5, 0.0]], [[-0.5, 0.0], [0.5, 0.0]]]}
        ]
    });
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "[{0}, {0}]", sx).unwrap();
    let path = file.path().to_str().unwrap().to_owned();
    let v = stdout_json(&["bound", "--measurements", &path, "--restarts", "8"]);
    assert!(v["common_eigenstate"].is_object());
    let bound: Vec<f64> = serde_json::from_value(v["bound"].clone()).unwrap();
    assert!((bound[0] - 1.0).abs() < 1e-6);
}

#[test]
fn least_uncertain_output_feeds_back_into_bound() {
    let state = serde_json::json!({
        "dim": 2,
        "entries": [[[0.7, 0.0], [0.1, 0.1]], [[0.1, -0.1], [0.3, 0.0]]]
    });
    let mut file = tempfile::NamedTempFile::new().unwrap();
    write!(file, "{state}").unwrap();
    let path = file.path().to_str().unwrap().to_owned();

    let v = stdout_json(&["least-uncertain", "--state", &path]);
    let spectrum: Vec<f64> = serde_json::from_value(v["spectrum"].clone()).unwrap();
    assert_eq!(spectrum.len(), 2);
    assert!(spectrum[0] >= spectrum[1]);
    assert!(v["von_neumann_entropy"].as_f64().unwrap() > 0.0);
    assert_eq!(v["projectors"].as_array().unwrap().len(), 2);

    // the spectrum is a probability vector the vector commands accept
    let spectrum_arg = serde_json::to_string(&v["spectrum"]).unwrap();
    let cmp = stdout_json(&["compare", "--a", &spectrum_arg, "--b", "1,0"]);
    assert_eq!(cmp["order"], "StrictlyBelow");

    // the embedded measurement is accepted by --measurements
    let mut mfile = tempfile::NamedTempFile::new().unwrap();
    write!(mfile, "{}", v["measurement"]).unwrap();
    let mpath = mfile.path().to_str().unwrap().to_owned();
    let bound = stdout_json(&["bound", "--measurements", &mpath, "--restarts", "8"]);
    // a single projective measurement always has a certain outcome state
    assert!(bound["common_eigenstate"].is_object());
}

#[test]
fn conjugate_json_and_csv() {
    let v = stdout_json(&["conjugate", "--s", "0.01"]);
    assert!((v["leading_joint_probability"].as_f64().unwrap() - 0.3025).abs() < 1e-3);
    assert!((v["asymptote"].as_f64().unwrap() - 0.30).abs() < 1e-12);
    assert_eq!(v["mu2"].as_array().unwrap().len(), 128);

    let out = majorant(&["conjugate", "--s", "0.01", "--quad-order", "64", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    let lines: Vec<&str> = text.trim().lines().collect();
    assert_eq!(lines[0], "node,eigenfunction");
    assert_eq!(lines.len(), 65);

    // bin widths instead of s
    let v = stdout_json(&["conjugate", "--delta-x", "1.0", "--delta-p", "0.0628318530717958648", "--hbar", "1.0"]);
    assert!((v["s"].as_f64().unwrap() - 0.01).abs() < 1e-12);
}

#[test]
fn entropic_bound_measures() {
    let v = stdout_json(&["entropic-bound", "--mub", "2", "--restarts", "16"]);
    assert_eq!(v["measure"], "shannon");
    assert!((v["entropic_bound"].as_f64().unwrap() - 0.5846923677841309).abs() < 1e-6);

    let v = stdout_json(&["entropic-bound", "--mub", "2", "--restarts", "16", "--measure", "tsallis:2"]);
    assert!(v["entropic_bound"].as_f64().unwrap() > 0.0);

    let out = majorant(&["entropic-bound", "--mub", "2", "--measure", "renyi"]);
    assert_eq!(out.status.code(), Some(2), "unknown measure is a usage error");
}

#[test]
fn reproduce_emits_reference_tables() {
    let v = stdout_json(&["reproduce", "mub2", "--restarts", "16"]);
    assert_eq!(v["scenario"], "mub2");
    let items = v["items"].as_array().unwrap();
    assert_eq!(items.len(), 4);
    for item in items {
        assert!(item["deviation"].as_f64().unwrap() < 1e-3);
        assert!(item["reference"].is_number() && item["computed"].is_number());
    }

    let out = majorant(&["reproduce", "theorem2-demo", "--format", "csv"]);
    let text = String::from_utf8_lossy(&out.stdout);
    assert!(text.starts_with("name,reference,computed,deviation"));
    assert!(text.lines().count() >= 4);
}
