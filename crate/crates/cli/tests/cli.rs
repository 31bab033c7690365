use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn cactus(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cactus")).args(args).output().expect("binary runs")
}

fn json(args: &[&str]) -> Value {
    let out = cactus(&[args, &["--format", "json"]].concat());
    assert!(out.status.success(), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn schema(name: &str) -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("../../schemas").join(format!("{name}.schema.json"));
    let value: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&value).expect("schema compiles")
}

fn assert_valid(name: &str, instance: &Value) {
    let s = schema(name);
    let msgs: Vec<String> = match s.validate(instance) {
        Ok(()) => return,
        Err(errors) => errors.map(|e| format!("{} at {}", e, e.instance_path)).collect(),
    };
    panic!("{name} output violates schema: {msgs:?}");
}

#[test]
fn kl_a1_has_v_inverse() {
    let v = json(&["kl", "--group", "A1"]);
    assert_valid("kl", &v);
    let rec = v.as_array().unwrap().iter().find(|r| r["y"] == serde_json::json!([]) && r["w"] == serde_json::json!([1])).unwrap();
    assert_eq!(rec["h"], "v^-1");
    assert_eq!(rec["mu"], 1);
}

#[test]
fn kl_single_column_has_four_terms() {
    let v = json(&["kl", "--group", "A2", "--w", "1,2"]);
    assert_valid("kl", &v);
    let hs: Vec<&str> = v.as_array().unwrap().iter().map(|r| r["h"].as_str().unwrap()).collect();
    assert_eq!(hs, ["v^-2", "v^-1", "v^-1", "1"]);
}

#[test]
fn input_words_are_reduced() {
    let out = cactus(&["kl", "--group", "A2", "--w", "1,1,2,1"]);
    assert!(out.status.success());
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("C[2,1] = T[2,1]"), "{text}");
}

#[test]
fn usage_errors_exit_with_two() {
    for args in [
        &["kl", "--group", "A0"][..],
        &["kl", "--group", "Q3"],
        &["kl", "--group", "A2", "--w", "1,3"],
        &["kl", "--group", "A2", "--w", "x"],
        &["kl"],
        &["kl", "--group", "A2", "--format", "dot"],
        &["wc", "--group", "A2", "--subdiagram", "4"],
        &["rsk", "--group", "B2"],
        &["crosscheck", "--n", "1"],
        &["frobnicate"],
    ] {
        let out = cactus(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
    }
}

#[test]
fn cell_counts() {
    for (group, kind, count) in [("A2", "right", 4), ("A2", "two-sided", 3), ("B2", "two-sided", 3), ("B2", "left", 4)] {
        let v = json(&["cells", "--group", group, "--kind", kind]);
        assert_valid("cells", &v);
        assert_eq!(v["cells"].as_array().unwrap().len(), count, "{group} {kind}");
    }
}

#[test]
fn b2_cells_match_golden() {
    // B2: {e}, {w0}, and the six remaining elements forming one two-sided cell
    let v = json(&["cells", "--group", "B2", "--kind", "two-sided"]);
    let golden = serde_json::json!({
        "kind": "two_sided",
        "cells": [[[]], [[1], [2], [1, 2], [2, 1], [1, 2, 1], [2, 1, 2]], [[1, 2, 1, 2]]],
        "order": [[1, 0], [2, 1]]
    });
    assert_eq!(v, golden);
}

#[test]
fn dot_output_for_cells() {
    let out = cactus(&["cells", "--group", "A2", "--format", "dot"]);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.starts_with("digraph right_cells {"));
    assert_eq!(text.matches("->").count(), 4);
}

#[test]
fn single_node_wall_crossing_is_identity() {
    let v = json(&["wc", "--group", "A3", "--subdiagram", "1"]);
    assert_valid("wc", &v);
    let perm = v["permutation"].as_array().unwrap();
    assert_eq!(perm.len(), 24);
    assert!(perm.iter().all(|pair| pair[0] == pair[1]));
    assert!(v.get("alpha").is_none());
}

#[test]
fn full_wall_crossing_carries_alpha() {
    let v = json(&["wc", "--group", "A2", "--subdiagram", "1,2"]);
    assert_valid("wc", &v);
    let alpha = v["alpha"].as_array().unwrap();
    assert_eq!(alpha.len(), 6);
    assert_eq!(alpha[5]["k"], 3);
}

#[test]
fn verify_passes_and_validates() {
    let v = json(&["verify", "--group", "A2"]);
    assert_valid("report", &v);
    assert!(v.as_array().unwrap().iter().all(|r| r["pass"] == true));
    assert_eq!(cactus(&["verify", "--group", "B2"]).status.code(), Some(0));
}

#[test]
fn crosscheck_small_n() {
    let v = json(&["crosscheck", "--n", "3"]);
    assert_valid("crosscheck", &v);
    assert_eq!(v["pass"], true);
    assert_eq!(cactus(&["crosscheck", "--n", "4"]).status.code(), Some(0));
}

#[test]
fn other_outputs_validate() {
    assert_valid("group", &json(&["group", "--group", "G2"]));
    let orbits = json(&["orbits", "--group", "A3"]);
    assert_valid("orbits", &orbits);
    assert_eq!(orbits.as_array().unwrap().len(), 10);
    let rsk = json(&["rsk", "--group", "A2", "--w", "1,2"]);
    assert_valid("rsk", &rsk);
    assert_eq!(rsk[0]["oneline"], serde_json::json!([2, 3, 1]));
    assert_valid("probe", &json(&["probe", "--group", "A3", "--subdiagram", "2,3"]));
}

#[test]
fn cartan_file_matches_named_group() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("b2.json");
    std::fs::write(&path, "[[2,-2],[-1,2]]").unwrap();
    let from_file = json(&["cells", "--cartan", path.to_str().unwrap(), "--kind", "two-sided"]);
    assert_eq!(from_file["cells"].as_array().unwrap().len(), 3);
    std::fs::write(&path, "[[2,-2],[-2,2]]").unwrap();
    assert_eq!(cactus(&["group", "--cartan", path.to_str().unwrap()]).status.code(), Some(2));
}

#[test]
fn outputs_are_deterministic() {
    for args in [&["kl", "--group", "B2"][..], &["cells", "--group", "A3", "--kind", "left"], &["verify", "--group", "G2"]] {
        let a = json(args);
        let b = json(args);
        assert_eq!(serde_json::to_vec(&a).unwrap(), serde_json::to_vec(&b).unwrap());
        let (x, y) = (cactus(args), cactus(args));
        assert_eq!(x.stdout, y.stdout, "{args:?}");
    }
}

#[test]
fn cache_round_trip() {
    let dir = tempfile::tempdir().unwrap();
    let cache = dir.path().to_str().unwrap();
    let fresh = cactus(&["cells", "--group", "A3", "--format", "json"]).stdout;
    let first = cactus(&["cells", "--group", "A3", "--format", "json", "--cache", cache]).stdout;
    let files: Vec<_> = std::fs::read_dir(dir.path()).unwrap().map(|e| e.unwrap().file_name()).collect();
    assert_eq!(files.len(), 1);
    let name = files[0].to_str().unwrap().to_string();
    assert!(name.starts_with("A3-") && name.ends_with(".kl.json"), "{name}");
    let second = cactus(&["cells", "--group", "A3", "--format", "json", "--cache", cache]).stdout;
    assert_eq!(fresh, first);
    assert_eq!(first, second);

    std::fs::write(dir.path().join(&name), r#"[{"y":[],"w":[1],"h":"v","mu":0}]"#).unwrap();
    assert_eq!(cactus(&["cells", "--group", "A3", "--cache", cache]).status.code(), Some(1));
}

#[test]
fn export_writes_valid_artifacts() {
    let dir = tempfile::tempdir().unwrap();
    let out = cactus(&["export", "--group", "A2", "--out", dir.path().to_str().unwrap()]);
    assert!(out.status.success());
    let read = |f: &str| -> Value { serde_json::from_str(&std::fs::read_to_string(dir.path().join(f)).unwrap()).unwrap() };
    assert_valid("kl", &read("kl.json"));
    for f in ["cells_left.json", "cells_right.json", "cells_two_sided.json"] {
        assert_valid("cells", &read(f));
    }
    for wc in read("wc.json").as_array().unwrap() {
        assert_valid("wc", wc);
    }
    assert_valid("report", &read("report.json"));
    assert_valid("orbits", &read("orbits.json"));
}
