use std::path::Path;
use std::process::Command;

use henselkit::wire::reverify;
use serde_json::{json, Value};

fn henselkit(args: &[&str]) -> (i32, String) {
    let out = Command::new(env!("CARGO_BIN_EXE_henselkit"))
        .args(args)
        .output()
        .expect("binary runs");
    (out.status.code().expect("exit code"), String::from_utf8(out.stdout).unwrap())
}

fn schema_for(kind: &str) -> jsonschema::Validator {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schemas").join(format!("{kind}.json"));
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::validator_for(&schema).unwrap()
}

/// Runs, checks the exit code, validates against the schema named by the
/// payload's kind, and recomputes `verified` from the reloaded payload.
fn payload(args: &[&str], code: i32) -> Value {
    let (got, stdout) = henselkit(args);
    assert_eq!(got, code, "{args:?}: {stdout}");
    let v: Value = serde_json::from_str(&stdout).unwrap();
    let kind = v["kind"].as_str().unwrap();
    let errors: Vec<String> = schema_for(kind).iter_errors(&v).map(|e| e.to_string()).collect();
    assert!(errors.is_empty(), "{args:?} violates the {kind} schema: {errors:?}");
    if kind != "error" {
        assert_eq!(reverify(&v).unwrap(), v["verified"] == json!(true), "{args:?}");
    }
    v
}

const SQRT2: [&str; 4] = ["-f", "-2,0,1", "-p", "7"];

fn with<'a>(extra: &[&'a str], base: &[&'a str]) -> Vec<&'a str> {
    let mut v = base.to_vec();
    v.extend_from_slice(extra);
    v
}

#[test]
fn split_lists_two_nodes() {
    let v = payload(&with(&SQRT2, &["split"]), 0);
    let nodes = v["nodes"].as_array().unwrap();
    assert_eq!(nodes.len(), 2);
    assert_eq!(nodes[0]["factor"], json!(["4", "1"]));
    assert_eq!(nodes[0]["label"], "(7, θ - 3)");
}

#[test]
fn generator_example() {
    let v = payload(&with(&["--node", "0"], &with(&SQRT2, &["hensel-gen"])), 0);
    assert_eq!(v["generator"]["eta"], json!(["5", "4"]));
    assert_eq!(v["generator"]["h"], json!(["-7", "-10", "1"]));
    let v = payload(&with(&["--node", "1"], &with(&SQRT2, &["hensel-gen"])), 0);
    assert_eq!(v["verified"], true);
}

#[test]
fn check_accepts_and_rejects() {
    let v = payload(
        &with(&["--element", "0,1", "--witness", "-2,0,1"], &with(&SQRT2, &["check"])),
        0,
    );
    assert_eq!(v["certificate"]["derivative_value"], 0);
    let v = payload(
        &with(&["--element", "0,1", "--witness", "4,0,-4,0,1"], &with(&SQRT2, &["check"])),
        1,
    );
    assert_eq!(v["henselian"], false);
    assert_eq!(v["rejection"]["node"], 0);
}

#[test]
fn cover_and_triple() {
    let v = payload(
        &with(&["--node", "1", "--elements", "0,1;1/3,1/2;2,-1"], &with(&SQRT2, &["cover"])),
        0,
    );
    assert_eq!(v["cover"]["entries"].as_array().unwrap().len(), 3);
    let v = payload(&with(&["--element", "0,1"], &with(&SQRT2, &["triple"])), 0);
    assert_eq!(v["triple"]["f"], json!(["3"]));
    assert_eq!(v["triple"]["r"]["element"], json!(["68", "32"]));
}

#[test]
fn spectra() {
    let v = payload(&with(&SQRT2, &["spectrum"]), 0);
    assert_eq!(v["spectrum"]["distinguished"], 1);
    assert_eq!(v["chains"], json!([[0, 1], [0, 2]]));
    assert_eq!(v["condition_ii"]["holds"], true);
    let v = payload(&["spectrum", "--base", "composite", "-p", "2", "-f", "-2:-1,0,1"], 0);
    assert_eq!(v["chains"], json!([[0, 1, 2]]));
    let v = payload(&["spectrum", "--base", "xadic", "-f", "-1:-1,0,1", "--node", "1"], 0);
    assert_eq!(v["fg_conditions"]["s_nodes"], json!([1]));
}

#[test]
fn spectrum_dot() {
    let (code, out) = henselkit(&with(&["--format", "dot"], &with(&SQRT2, &["spectrum"])));
    assert_eq!(code, 0);
    assert!(out.starts_with("digraph spectrum {"));
    assert!(out.contains("n1 [label=\"(7, η - 3)\", shape=doublecircle];"));
    let (code, _) = henselkit(&with(&["--format", "dot"], &with(&SQRT2, &["split"])));
    assert_eq!(code, 2);
}

#[test]
fn uniformize_catalogue() {
    for name in ["sqrt(1+x)", "inert quadratic", "split cubic"] {
        let v = payload(&["uniformize", "--entry", name], 0);
        assert_eq!(v["report"]["regularity"]["regular"], true, "{name}");
    }
    let v = payload(&["uniformize", "--entry", "ramified"], 1);
    assert_eq!(v["rejection"]["stage"], "split");
}

#[test]
fn errors_name_their_stage() {
    let cases: [(&[&str], &str); 5] = [
        (&["split", "-f", "1,0,-2", "-p", "7"], "number_field"),
        (&["split", "-f", "-2,0,1", "-p", "2"], "split"),
        (&["hensel-gen", "-f", "-2,0,1", "-p", "7", "--node", "5"], "split"),
        (&["check", "-f", "-2,0,1", "-p", "7", "--element", "0,1", "--witness", "1/7,1"], "check"),
        (&["bogus"], "usage"),
    ];
    for (args, stage) in cases {
        let v = payload(args, 2);
        assert_eq!(v["kind"], "error");
        assert_eq!(v["stage"], stage, "{args:?}");
    }
    let v = payload(&["check", "-f", "-2,0,1", "-p", "7", "--element", "0,1", "--witness", "1/7,1"], 2);
    assert_eq!(v["witness"], "1/7");
}

#[test]
fn output_is_reproducible() {
    for args in [
        with(&SQRT2, &["spectrum"]),
        with(&["--elements", "1/3,1/2"], &with(&SQRT2, &["cover"])),
        with(&["--seed", "99"], &with(&SQRT2, &["hensel-gen"])),
        vec!["uniformize", "--entry", "split cubic", "--format", "text"],
    ] {
        assert_eq!(henselkit(&args), henselkit(&args), "{args:?}");
    }
}

#[test]
fn output_file() {
    let dir = std::env::temp_dir().join(format!("henselkit-cli-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let path = dir.join("split.json");
    let (code, stdout) = henselkit(&with(&["-o", path.to_str().unwrap()], &with(&SQRT2, &["split"])));
    assert_eq!(code, 0);
    assert!(stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(v["kind"], "split");
    std::fs::remove_dir_all(dir).unwrap();
}

#[test]
fn verify_all_quick() {
    let v = payload(&["verify-all", "--quick", "--seed", "7"], 0);
    assert_eq!(v["suites"].as_array().unwrap().len(), 10);
    let mut tampered = v.clone();
    tampered["suites"][0]["failure_count"] = json!(1);
    assert!(!reverify(&tampered).unwrap());
}

#[test]
fn help_documents_coefficient_order() {
    let (code, out) = henselkit(&["--help"]);
    assert_eq!(code, 0);
    assert!(out.contains("constant-term first"));
}

#[test]
fn schemas_reject_malformed_payloads() {
    let (_, out) = henselkit(&with(&SQRT2, &["hensel-gen"]));
    let v: Value = serde_json::from_str(&out).unwrap();
    let schema = schema_for("hensel_gen");
    assert!(schema.is_valid(&v));
    let mut bad = v.clone();
    bad["generator"]["eta"] = json!([5, 4]);
    assert!(!schema.is_valid(&bad));
    let mut bad = v.clone();
    bad["input"]["precision_start"] = json!(3);
    assert!(!schema.is_valid(&bad));
    let mut bad = v;
    bad["extra"] = json!(true);
    assert!(!schema.is_valid(&bad));
}
