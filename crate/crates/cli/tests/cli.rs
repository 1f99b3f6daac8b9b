use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn gonil(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_gonil")).args(args).output().expect("binary runs")
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

fn stdout_json(out: &Output) -> Value {
    serde_json::from_slice(&out.stdout).expect("stdout is JSON")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

const HEIS: &str = r#"{"dim": 3,
    "brackets": [{"i": 0, "j": 1, "k": 2, "coeff": "1"}],
    "gram": [{"i": 0, "j": 0, "coeff": "1"}, {"i": 1, "j": 1, "coeff": "1"}, {"i": 2, "j": 2, "coeff": "1"}]}"#;

#[test]
fn emitted_preset_analyzes_like_direct_run() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("family3.json");
    let out = gonil(&["example", "family", "--d", "3", "--emit", path(&file)]);
    assert!(out.status.success(), "{}", stderr(&out));

    let direct = gonil(&["example", "family", "--d", "3", "--samples", "30"]);
    let from_file = gonil(&["analyze", path(&file), "--samples", "30"]);
    assert!(direct.status.success() && from_file.status.success());
    let direct = stdout_json(&direct);
    let from_file = stdout_json(&from_file);
    assert_eq!(direct["dim"], 10);
    assert_eq!(direct["natural_reductivity"]["verdict"], "naturally-reductive");
    // the preset supplies its graph; the file is analyzed from scratch
    for key in ["dim", "signature", "nilpotency_step", "lower_central_dims", "derived", "isotropy_dim", "double_extension"] {
        assert_eq!(direct[key], from_file[key], "{key}");
    }
    assert_eq!(direct["natural_reductivity"]["verdict"], from_file["natural_reductivity"]["verdict"]);
    assert_eq!(direct["input"]["sha256"], from_file["input"]["sha256"]);
}

#[test]
fn emitted_family2_certificate_is_byte_identical() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("f2.json");
    assert!(gonil(&["example", "family", "--d", "2", "--emit", path(&file)]).status.success());
    let direct = gonil(&["example", "family", "--d", "2"]);
    let from_file = gonil(&["analyze", path(&file)]);
    assert!(direct.status.success() && from_file.status.success());
    assert_eq!(direct.stdout, from_file.stdout);
}

#[test]
fn kaplan6_emitted_bracket_count() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("k.json");
    assert!(gonil(&["example", "kaplan6", "--emit", path(&file)]).status.success());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    // J1 = left multiplication by i, J2 by j: two nonzero pairs each
    assert_eq!(v["brackets"].as_array().unwrap().len(), 4);
}

#[test]
fn nonnatred_d4_has_dim_18() {
    let out = gonil(&["example", "nonnatred", "--d", "4", "--samples", "10"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["dim"], 18);
    assert_eq!(v["natural_reductivity"]["verdict"], "not-naturally-reductive");
    assert!(v["reverification_failures"].as_array().unwrap().is_empty());
}

#[test]
fn kaplan6_is_sampled_and_not_naturally_reductive() {
    let out = gonil(&["example", "kaplan6", "--samples", "25", "--seed", "3"]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["geodesic_orbit"]["verdict"]["method"], "sampled");
    assert_eq!(v["geodesic_orbit"]["verdict"]["count"], 25);
    assert_eq!(v["natural_reductivity"]["verdict"], "not-naturally-reductive");
}

#[test]
fn jacobi_failure_exits_2_and_names_triple() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("bad.json");
    std::fs::write(
        &file,
        r#"{"dim": 3,
            "brackets": [{"i": 0, "j": 1, "k": 2, "coeff": "1"}, {"i": 0, "j": 2, "k": 0, "coeff": "1"}],
            "gram": [{"i": 0, "j": 0, "coeff": "1"}, {"i": 1, "j": 1, "coeff": "1"}, {"i": 2, "j": 2, "coeff": "1"}]}"#,
    )
    .unwrap();
    let out = gonil(&["analyze", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("Jacobi") && err.contains("(0, 1, 2)"), "{err}");
    assert!(out.stdout.is_empty());
}

#[test]
fn malformed_json_exits_2() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("broken.json");
    std::fs::write(&file, "{\"dim\": 3, \"brackets\": [").unwrap();
    let out = gonil(&["analyze", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!stderr(&out).is_empty());

    let out = gonil(&["analyze", path(&dir.path().join("missing.json"))]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn decompose_family3() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("family3.json");
    let data = dir.path().join("data.json");
    assert!(gonil(&["example", "family", "--d", "3", "--emit", path(&file)]).status.success());
    let out = gonil(&["doubleext", "decompose", path(&file), "--samples", "20", "--emit-data", path(&data)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let v = stdout_json(&out);
    assert_eq!(v["outcome"], "double-extension");
    assert_eq!(v["base"]["dim"], 8);
    assert_eq!(v["base"]["abelian"], true);
    assert_eq!(v["base"]["signature"]["minus"], 0);
    assert_eq!(v["base"]["signature"]["zero"], 0);
    assert_eq!(v["roundtrip"], true);
    assert_eq!(v["base_go"]["feasible"], 20);

    let rebuilt = gonil(&["doubleext", "build", path(&data)]);
    assert!(rebuilt.status.success(), "{}", stderr(&rebuilt));
    let mut rebuilt = stdout_json(&rebuilt);
    let mut original: Value = serde_json::from_str(&std::fs::read_to_string(&file).unwrap()).unwrap();
    rebuilt.as_object_mut().unwrap().remove("metadata");
    original.as_object_mut().unwrap().remove("metadata");
    assert_eq!(rebuilt, original);
}

#[test]
fn decompose_rejects_nondegenerate_derived() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("abelian.json");
    std::fs::write(
        &file,
        r#"{"dim": 2, "brackets": [],
            "gram": [{"i": 0, "j": 0, "coeff": "-1"}, {"i": 1, "j": 1, "coeff": "1"}]}"#,
    )
    .unwrap();
    let out = gonil(&["doubleext", "decompose", path(&file)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("restricted to [n,n] is nondegenerate"), "{}", stderr(&out));

    let heis = dir.path().join("heis.json");
    std::fs::write(&heis, HEIS).unwrap();
    let out = gonil(&["doubleext", "decompose", path(&heis)]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("Lorentz"), "{}", stderr(&out));
}

#[test]
fn build_family3_data_matches_preset() {
    let dir = tempfile::tempdir().unwrap();
    let spec = dir.path().join("f.json");
    let data = dir.path().join("x.json");
    let built = dir.path().join("built.json");
    let out = gonil(&["example", "family", "--d", "3", "--emit", path(&spec), "--emit-extension", path(&data)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let out = gonil(&["doubleext", "build", path(&data), "--emit", path(&built)]);
    assert!(out.status.success(), "{}", stderr(&out));
    let read = |p: &Path| {
        let mut v: Value = serde_json::from_str(&std::fs::read_to_string(p).unwrap()).unwrap();
        v.as_object_mut().unwrap().remove("metadata");
        v
    };
    assert_eq!(read(&spec), read(&built));
}

#[test]
fn output_is_deterministic() {
    let a = gonil(&["example", "kaplan6", "--samples", "15", "--seed", "9"]);
    let b = gonil(&["example", "kaplan6", "--samples", "15", "--seed", "9", "--sequential"]);
    assert!(a.status.success());
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn bad_preset_arguments_exit_2() {
    let out = gonil(&["example", "nope"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown preset"));
    let out = gonil(&["example", "family", "--d", "1"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("at least 2"));
}

#[test]
fn json_flag_matches_stdout() {
    let dir = tempfile::tempdir().unwrap();
    let file = dir.path().join("heis.json");
    let cert = dir.path().join("cert.json");
    std::fs::write(&file, HEIS).unwrap();
    let out = gonil(&["analyze", path(&file), "--json", path(&cert)]);
    assert!(out.status.success(), "{}", stderr(&out));
    assert_eq!(std::fs::read(&cert).unwrap(), out.stdout);
    let v = stdout_json(&out);
    assert_eq!(v["geodesic_orbit"]["verdict"]["method"], "certified-by-graph");
}
