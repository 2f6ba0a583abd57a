use std::process::{Command, Output};

use serde_json::Value;

const MODEL_P: &str = r#"{"dim":3,"halfspaces":[
  {"normal":[1,1,-1],"level":"0"},
  {"normal":[1,-1,1],"level":"0"},
  {"normal":[-1,1,1],"level":"0"}]}"#;

fn cytoric(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_cytoric")).args(args).output().expect("binary runs")
}

fn json_of(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

#[test]
fn resolve_model_p_from_file() {
    let dir = tempfile::tempdir().unwrap();
    let input = dir.path().join("p.json");
    std::fs::write(&input, MODEL_P).unwrap();
    let out = cytoric(&["resolve", input.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert_eq!(report["schema_version"], 1);
    let verts: Vec<Vec<String>> = serde_json::from_value(report["data"]["result_vertices"].clone()).unwrap();
    assert_eq!(verts.len(), 4);
    assert!(verts.contains(&vec!["1/1".to_string(), "1/1".into(), "1/1".into()]));
    let walls = report["data"]["walls"].as_array().unwrap();
    assert!(walls.iter().all(|w| w["a"] == -1 && w["b"] == -1));
}

#[test]
fn reports_are_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let (a, b) = (dir.path().join("a.json"), dir.path().join("b.json"));
    for path in [&a, &b] {
        let out = cytoric(&["resolve", MODEL_P, "--epsilon", "1/2", "--output", path.to_str().unwrap()]);
        assert_eq!(out.status.code(), Some(0));
    }
    assert_eq!(std::fs::read(&a).unwrap(), std::fs::read(&b).unwrap());
}

#[test]
fn worker_count_does_not_change_output() {
    let run = |workers: &str| {
        Command::new(env!("CARGO_BIN_EXE_cytoric"))
            .args(["coxeter", "--selftest"])
            .env("CYTORIC_WORKERS", workers)
            .output()
            .unwrap()
    };
    let (one, four) = (run("1"), run("4"));
    assert_eq!(one.status.code(), Some(0));
    assert_eq!(one.stdout, four.stdout);
    assert_eq!(run("zero").status.code(), Some(2));
}

#[test]
fn explicit_cut_is_accepted() {
    let cut = r#"{"halfspaces":[{"normal":[1,0,0],"level":"1"},{"normal":[0,1,0],"level":"1"},{"normal":[0,0,1],"level":"3/2"}]}"#;
    let out = cytoric(&["resolve", MODEL_P, "--cut", cut]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    assert!(report["notes"].as_array().unwrap().iter().any(|n| n == "cut levels are asymmetric"));
}

#[test]
fn errors_exit_with_two() {
    let out = cytoric(&["resolve", "{\"dim\": 3,\n \"halfspaces\": [}"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("line 2"));

    let out = cytoric(&["resolve", MODEL_P, "--epsilon", "-1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(String::from_utf8_lossy(&out.stderr).contains("infeasible"));

    assert_eq!(cytoric(&["fiber-action", "--element", "+++-"]).status.code(), Some(2));
    assert_eq!(cytoric(&["coxeter", "--chain", "0"]).status.code(), Some(2));
    assert_eq!(cytoric(&["resolve", "/no/such/polytope.json"]).status.code(), Some(2));
}

#[test]
fn perturbed_fixture_fails_by_name() {
    let dir = tempfile::tempdir().unwrap();
    let fixture = dir.path().join("perturbed.json");
    std::fs::write(&fixture, r#"{"model_r_vertices":[["1","1","1"],["1","1","2"],["1","2","1"],["3","1","1"]]}"#).unwrap();
    let out = cytoric(&["verify", "--topic", "resolution", "--overrides", fixture.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
    let failed: Vec<String> = json_of(&out)["checks"]
        .as_array()
        .unwrap()
        .iter()
        .filter(|c| c["passed"] == false)
        .map(|c| c["name"].as_str().unwrap().to_string())
        .collect();
    assert_eq!(failed, ["resolution.vertices"]);
}

#[test]
fn topic_filter_restricts_checks() {
    let out = cytoric(&["verify", "--topic", "twistor-fiber"]);
    assert_eq!(out.status.code(), Some(0));
    let report = json_of(&out);
    let checks = report["checks"].as_array().unwrap();
    assert!(!checks.is_empty());
    assert!(checks.iter().all(|c| c["name"].as_str().unwrap().starts_with("twistor-fiber.")));
}

#[test]
fn full_verification_passes() {
    let out = cytoric(&["verify", "--format", "table"]);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stdout));
    assert!(String::from_utf8_lossy(&out.stdout).contains(" 0 failed"));
}

#[test]
fn betti_commands() {
    let out = cytoric(&["betti", "--doubled", "600", "720"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["data"]["resolved"]["b"][2], 2041);

    let out = cytoric(&["betti", r#"{"components":[{"genus":3,"z2z2_count":0}]}"#]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_of(&out)["data"]["resolved"]["b"][3], 6);
}

#[test]
fn coxeter_chain_report() {
    let out = cytoric(&["coxeter", "--chain", "2"]);
    assert_eq!(out.status.code(), Some(0));
    let data = &json_of(&out)["data"];
    assert_eq!([&data["V"], &data["E"], &data["F"], &data["C"]], [1160, 2320, 1386, 226]);
    assert_eq!(data["convention_dependent"], true);
    assert_eq!(data["b2_of_resolution"], 1 + 1160 + 2 * 1386);
}

#[test]
fn cube_needs_no_cut() {
    let cube = r#"{"dim":3,"halfspaces":[
      {"normal":[1,0,0],"level":"0"},{"normal":[0,1,0],"level":"0"},{"normal":[0,0,1],"level":"0"},
      {"normal":[-1,0,0],"level":"-1"},{"normal":[0,-1,0],"level":"-1"},{"normal":[0,0,-1],"level":"-1"}]}"#;
    let out = cytoric(&["resolve", cube, "--format", "table"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(String::from_utf8_lossy(&out.stdout).contains("already Delzant, no cut applied"));
}
