use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn bgprod(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_bgprod"))
        .args(args)
        .env_remove("BGPROD_DEPTH")
        .output()
        .expect("runs")
}

fn json(args: &[&str]) -> Value {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = bgprod(&full);
    assert!(
        out.status.success(),
        "{}",
        String::from_utf8_lossy(&out.stderr)
    );
    serde_json::from_slice(&out.stdout).expect("valid JSON")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exited")
}

#[test]
fn homology_text() {
    let out = bgprod(&["homology", "--group", "cyclic:4", "--max-degree", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(text.contains("Z/4"), "{text}");
}

#[test]
fn product_report_shape() {
    let v = json(&["product", "--group", "cyclic:3", "--k", "1", "--l", "1"]);
    assert_eq!(v["schema_version"], 1);
    assert_eq!(v["command"]["verb"], "product");
    assert_eq!(v["groups"][0]["order"], 3);
    let p = &v["result"]["product"];
    assert_eq!(p["degree"], 3);
    assert_eq!(p["basis"], "lens");
    let c: i64 = p["coords"][0].as_str().unwrap().parse().unwrap();
    assert!(c == 1 || c == 2, "a generator of Z/3, got {c}");
    assert!(v.get("timings").is_none());
}

#[test]
fn primary_unit_product() {
    let v = json(&[
        "product",
        "--group",
        "product:cyclic:2,cyclic:2",
        "--k",
        "0",
        "--l",
        "0",
        "--primary",
    ]);
    assert_eq!(v["result"]["product"]["coords"][0], "4");
}

#[test]
fn tate_and_table() {
    let v = json(&["tate", "--group", "q8", "--from", "-2", "--to", "2"]);
    assert!(v["result"].to_string().contains('8'));
    let out = bgprod(&["table", "--group", "cyclic:2", "--kmax", "3", "--lmax", "3"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn join_agrees_with_tate_route() {
    let v = json(&["join", "--m", "5", "--k", "1", "--l", "1"]);
    let r = &v["result"];
    assert_eq!(r["join"]["boundary_ok"], true);
    assert_eq!(r["join"]["degree"], 7);
    let join: i64 = r["join"]["coefficient"].as_str().unwrap().parse().unwrap();
    let tate: i64 = r["tate_coefficient"].as_str().unwrap().parse().unwrap();
    assert_eq!(join.abs(), 1);
    assert_eq!(tate.abs(), 1);
}

#[test]
fn verify_single_items() {
    let v = json(&["verify", "--item", "9", "--item", "12"]);
    assert_eq!(v["result"]["pass"], true);
    assert_eq!(v["result"]["items"].as_array().unwrap().len(), 2);
    let out = bgprod(&["verify", "--suite", "properties", "--item", "P4"]);
    assert_eq!(code(&out), 0);
}

#[test]
fn transfer_and_covering() {
    let v = json(&[
        "transfer",
        "--group",
        "cyclic:4",
        "--subgroup",
        "0,2",
        "--as",
        "cyclic:2",
        "--kmax",
        "1",
    ]);
    assert_eq!(v["command"]["as"], "cyclic:2");
    assert_eq!(
        code(&bgprod(&[
            "covering", "--source", "cyclic:6", "--target", "cyclic:3", "--kmax", "1"
        ])),
        0
    );
}

#[test]
fn json_is_deterministic() {
    let args = [
        "--json", "table", "--group", "cyclic:4", "--kmax", "3", "--lmax", "3",
    ];
    assert_eq!(bgprod(&args).stdout, bgprod(&args).stdout);
}

#[test]
fn timings_only_on_request() {
    let v = json(&[
        "--timings",
        "homology",
        "--group",
        "cyclic:2",
        "--max-degree",
        "2",
    ]);
    assert!(v.get("timings").is_some());
}

#[test]
fn exit_codes() {
    assert_eq!(code(&bgprod(&["verify", "--suite", "nope"])), 2);
    assert_eq!(code(&bgprod(&["verify", "--item", "99"])), 2);
    assert_eq!(code(&bgprod(&["homology", "--group", "cyclic:"])), 2);
    assert_eq!(code(&bgprod(&["homology", "--group", "cyclic:129"])), 3);
    assert_eq!(
        code(&bgprod(&[
            "--depth", "3", "product", "--group", "cyclic:2", "--k", "1", "--l", "1"
        ])),
        2
    );
}

#[test]
fn non_associative_table_is_rejected() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    // a Latin square with identity 0 that is not associative
    write!(
        f,
        "[[0,1,2,3,4],[1,0,3,4,2],[2,4,0,1,3],[3,2,4,0,1],[4,3,1,2,0]]"
    )
    .unwrap();
    let spec = format!("table:{}", f.path().display());
    let out = bgprod(&["homology", "--group", &spec]);
    assert_eq!(code(&out), 2);
    assert!(!out.stderr.is_empty());
}

#[test]
fn table_file_group() {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    write!(
        f,
        r#"{{"name": "klein", "table": [[0,1,2,3],[1,0,3,2],[2,3,0,1],[3,2,1,0]]}}"#
    )
    .unwrap();
    let spec = format!("table:{}", f.path().display());
    let v = json(&["homology", "--group", &spec, "--max-degree", "2"]);
    assert_eq!(v["groups"][0]["order"], 4);
}

#[test]
fn config_and_environment_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let cfg = dir.path().join("bgprod.toml");
    std::fs::write(&cfg, "json = true\ndepth = 1\n").unwrap();
    let cfg = cfg.to_str().unwrap();
    let args = [
        "--config", cfg, "product", "--group", "cyclic:2", "--k", "1", "--l", "1",
    ];
    // depth 1 from the file is too shallow
    assert_eq!(code(&bgprod(&args)), 2);
    // the environment overrides the file
    let out = Command::new(env!("CARGO_BIN_EXE_bgprod"))
        .args(args)
        .env("BGPROD_DEPTH", "12")
        .output()
        .unwrap();
    assert_eq!(code(&out), 0);
    let v: Value = serde_json::from_slice(&out.stdout).expect("json from the config file");
    assert_eq!(v["result"]["depth"], 12);
    // and the flag overrides both
    let mut flagged = vec!["--depth", "8"];
    flagged.extend_from_slice(&args);
    let out = Command::new(env!("CARGO_BIN_EXE_bgprod"))
        .args(&flagged)
        .env("BGPROD_DEPTH", "12")
        .output()
        .unwrap();
    let v: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(v["result"]["depth"], 8);

    std::fs::write(dir.path().join("bad.toml"), "colour = \"red\"\n").unwrap();
    let bad = dir.path().join("bad.toml");
    assert_eq!(
        code(&bgprod(&[
            "--config",
            bad.to_str().unwrap(),
            "homology",
            "--group",
            "cyclic:2"
        ])),
        2
    );
}
