//! End-to-end tests against the built binary: report content, exit codes,
//! determinism, and the documented error surface.

use std::path::PathBuf;
use std::process::{Command, Output};

fn fixture(name: &str) -> String {
    let mut p = PathBuf::from(env!("CARGO_MANIFEST_DIR"));
    p.push("tests");
    p.push("fixtures");
    p.push(name);
    p.to_string_lossy().into_owned()
}

fn dilworth(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dilworth"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_json(out: &Output) -> serde_json::Value {
    assert!(
        out.status.success(),
        "expected success, stderr: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn ranks_reports_table_and_passes_checks() {
    let out = dilworth(&["ranks", &fixture("transversal_planes.json")]);
    let report = stdout_json(&out);
    assert_eq!(report["command"], "ranks");
    assert_eq!(report["seed"], 42);
    let table = report["results"]["table"].as_array().unwrap();
    assert_eq!(table.len(), 4);
    assert_eq!(table[3]["rank"], 4);
    assert_eq!(table[3]["truncated_rank"], 2);
    for check in report["verification"].as_array().unwrap() {
        assert_eq!(check["passed"], true, "{check}");
    }
}

#[test]
fn identical_runs_are_byte_identical() {
    let first = dilworth(&["ranks", &fixture("transversal_planes.json")]);
    let second = dilworth(&["ranks", &fixture("transversal_planes.json")]);
    assert!(first.status.success());
    assert_eq!(first.stdout, second.stdout);

    let gen1 = dilworth(&["resolution", &fixture("generic_pair.json"), "--verify"]);
    let gen2 = dilworth(&["resolution", &fixture("generic_pair.json"), "--verify"]);
    assert!(gen1.status.success());
    assert_eq!(gen1.stdout, gen2.stdout);
}

#[test]
fn seed_override_changes_the_digest() {
    let base = stdout_json(&dilworth(&["ranks", &fixture("transversal_planes.json")]));
    let reseeded = stdout_json(&dilworth(&[
        "ranks",
        &fixture("transversal_planes.json"),
        "--seed",
        "5",
    ]));
    assert_ne!(base["input_digest"], reseeded["input_digest"]);
    assert_eq!(reseeded["seed"], 5);
}

#[test]
fn csv_view_emits_the_table() {
    let out = dilworth(&["ranks", &fixture("transversal_planes.json"), "--csv"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("subset,rank,truncated_rank,witness_partition\n"));
    assert_eq!(text.lines().count(), 5);
}

#[test]
fn timing_is_opt_in() {
    let plain = stdout_json(&dilworth(&["ranks", &fixture("transversal_planes.json")]));
    assert!(plain.get("timing_ms").is_none());
    let timed = stdout_json(&dilworth(&[
        "ranks",
        &fixture("transversal_planes.json"),
        "--timing",
    ]));
    assert!(timed.get("timing_ms").is_some());
}

#[test]
fn points_star_reports_gamma_and_generator_box() {
    let report = stdout_json(&dilworth(&[
        "points",
        &fixture("transversal_planes.json"),
        "--star",
    ]));
    assert_eq!(report["results"]["gamma"], serde_json::json!([1, 2, 1]));
    assert_eq!(
        report["results"]["points"].as_array().unwrap().len(),
        4
    );
    assert_eq!(
        report["results"]["generator_box"].as_array().unwrap().len(),
        4
    );
}

#[test]
fn invariants_of_equal_planes() {
    let report = stdout_json(&dilworth(&["invariants", &fixture("double_plane.json")]));
    assert_eq!(report["results"]["betti"], serde_json::json!([3, 2]));
    assert_eq!(report["results"]["projective_dimension"], 1);
    let dec = report["results"]["primary_decomposition"].as_array().unwrap();
    assert_eq!(dec.len(), 1);
    assert_eq!(dec[0]["subset"], "{1,2}");
    assert_eq!(dec[0]["multiplicity"], 2);
}

#[test]
fn invariants_of_the_cube() {
    let report = stdout_json(&dilworth(&[
        "invariants",
        &fixture("double_plane.json"),
        "--nu",
        "3",
    ]));
    assert_eq!(report["results"]["betti"], serde_json::json!([7, 6]));
    let dec = report["results"]["primary_decomposition"].as_array().unwrap();
    assert_eq!(dec[0]["multiplicity"], 6);
}

#[test]
fn invariants_product_of_powers() {
    let report = stdout_json(&dilworth(&[
        "invariants",
        &fixture("double_plane.json"),
        "--u",
        "2,1",
    ]));
    // I1^2 I2 = m^3 in two variables: 4 generators, 3 syzygies
    assert_eq!(report["results"]["betti"], serde_json::json!([4, 3]));
    let dec = report["results"]["primary_decomposition"].as_array().unwrap();
    assert_eq!(dec[0]["multiplicity"], 3);
}

#[test]
fn resolution_verifies_and_lists_certified_degrees() {
    let report = stdout_json(&dilworth(&[
        "resolution",
        &fixture("transversal_planes.json"),
        "--verify",
    ]));
    assert_eq!(report["results"]["betti_census"], serde_json::json!([4, 4, 1]));
    assert_eq!(report["results"]["length"], 2);
    let strands = report["results"]["strands"].as_array().unwrap();
    let degrees: Vec<u64> = strands
        .iter()
        .map(|s| s["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![2, 3, 4, 5, 6]);
    let names: Vec<&str> = report["verification"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| c["check"].as_str().unwrap())
        .collect();
    assert!(names.contains(&"minimality"));
    assert!(names.contains(&"d_squared"));
    assert!(names.contains(&"strand_exactness"));
}

#[test]
fn resolution_respects_tmax() {
    let report = stdout_json(&dilworth(&[
        "resolution",
        &fixture("transversal_planes.json"),
        "--verify",
        "--tmax",
        "3",
    ]));
    let strands = report["results"]["strands"].as_array().unwrap();
    let degrees: Vec<u64> = strands
        .iter()
        .map(|s| s["degree"].as_u64().unwrap())
        .collect();
    assert_eq!(degrees, vec![2, 3]);
}

#[test]
fn resolution_exports_the_complex() {
    let dir = std::env::temp_dir().join(format!("dilworth-export-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("complex.json");
    let report = stdout_json(&dilworth(&[
        "resolution",
        &fixture("double_plane.json"),
        "--export",
        path.to_str().unwrap(),
    ]));
    assert_eq!(report["results"]["exported_to"], path.to_str().unwrap());
    let doc: serde_json::Value =
        serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(doc["betti"], serde_json::json!([3, 2]));
    assert_eq!(doc["variables"], 2);
    std::fs::remove_dir_all(&dir).ok();
}

#[test]
fn hilbert_values_and_oracle() {
    let report = stdout_json(&dilworth(&[
        "hilbert",
        &fixture("double_plane.json"),
        "--u",
        "0,0",
    ]));
    assert_eq!(report["results"]["value"], 1);

    let report = stdout_json(&dilworth(&[
        "hilbert",
        &fixture("double_plane.json"),
        "--u",
        "1,1",
        "--oracle",
    ]));
    assert_eq!(report["results"]["value"], 3);
    assert_eq!(report["verification"][0]["check"], "span_rank_oracle");
    assert_eq!(report["verification"][0]["passed"], true);
}

#[test]
fn hilbert_rejects_wrong_multidegree_length() {
    let out = dilworth(&[
        "hilbert",
        &fixture("double_plane.json"),
        "--u",
        "1,1,1",
    ]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
}

#[test]
fn quotients_trace_covers_every_generator() {
    for order in ["grlex", "random"] {
        let report = stdout_json(&dilworth(&[
            "quotients",
            &fixture("double_plane.json"),
            "--order",
            order,
        ]));
        let steps = report["results"]["steps"].as_array().unwrap();
        assert_eq!(steps.len(), 3, "order {order}");
        assert_eq!(report["verification"][0]["passed"], true);
    }
}

#[test]
fn parse_errors_exit_one_with_machine_readable_stderr() {
    let out = dilworth(&["ranks", &fixture("bad_entry.json")]);
    assert_eq!(out.status.code(), Some(1));
    assert!(out.stdout.is_empty());
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "parse");

    let out = dilworth(&["ranks", "/definitely/not/a/file.json"]);
    assert_eq!(out.status.code(), Some(1));
    let err: serde_json::Value = serde_json::from_slice(&out.stderr).unwrap();
    assert_eq!(err["error"]["kind"], "input");
}

#[test]
fn generic_shorthand_samples_a_certified_arrangement() {
    let report = stdout_json(&dilworth(&["invariants", &fixture("generic_pair.json")]));
    assert_eq!(report["results"]["betti"], serde_json::json!([4, 4, 1]));
    assert_eq!(report["results"]["projective_dimension"], 2);
}
