use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn jetsec(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_jetsec"))
        .args(args)
        .env("LC_ALL", "C")
        .output()
        .expect("binary runs")
}

fn stdout(args: &[&str]) -> String {
    let out = jetsec(args);
    assert!(
        out.status.success(),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    String::from_utf8(out.stdout).unwrap()
}

fn golden(name: &str) -> String {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name);
    std::fs::read_to_string(path).unwrap()
}

fn schema() -> jsonschema::JSONSchema {
    let path = PathBuf::from(env!("CARGO_MANIFEST_DIR")).join("report.schema.json");
    let schema: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&schema).expect("schema compiles")
}

#[test]
fn golden_files() {
    assert_eq!(
        stdout(&["member", "--poly", "x1^2", "--n", "3"]),
        golden("member_x1sq_n3.txt")
    );
    assert_eq!(
        stdout(&["identity", "--prop", "cis", "--n", "4..10"]),
        golden("identity_cis_4_10.txt")
    );
    assert_eq!(
        stdout(&["solve", "--n", "4", "--d", "2", "--format", "json"]),
        golden("solve_n4_d2.json")
    );
}

#[test]
fn every_verb_emits_schema_valid_json() {
    let schema = schema();
    let runs: &[&[&str]] = &[
        &["expand", "--poly", "x2*x0 - 2*x1^2"],
        &["partner", "--poly", "x2*x0 - 2*x1^2", "--n", "3"],
        &["member", "--poly", "x1^2", "--n", "3"],
        &["member", "--poly", "1", "--n", "2"],
        &["derive", "--poly", "x1*x0"],
        &["basis", "--n", "5"],
        &["basis", "--n", "5", "--d", "3", "--source", "solver"],
        &["dims", "--n", "2..6"],
        &["solve", "--n", "5", "--d", "2", "--l", "3"],
        &["identity", "--prop", "corollary", "--n", "4..6"],
        &["identity", "--prop", "theorem", "--n", "2..5"],
        &["bijection", "--n", "5", "--mu", "4,1,0,0"],
        &["probe", "--n", "6", "--d", "3"],
    ];
    for args in runs {
        let mut full = args.to_vec();
        full.extend(["--format", "json"]);
        let report: Value = serde_json::from_str(&stdout(&full)).unwrap();
        if let Err(errors) = schema.validate(&report) {
            let msgs: Vec<String> = errors.map(|e| e.to_string()).collect();
            panic!("{args:?}: {msgs:?}");
        }
        assert_eq!(report["command"], args[0]);
        assert_eq!(report["status"], "ok", "{args:?}");
    }
}

#[test]
fn report_contents() {
    let r: Value = serde_json::from_str(&stdout(&[
        "partner", "--poly", "1", "--n", "2", "--format", "json",
    ]))
    .unwrap();
    assert_eq!(r["result"]["partner"], "x0^2");
    assert_eq!(r["result"]["verified"], true);

    let r: Value = serde_json::from_str(&stdout(&["expand", "--poly", "x2", "--format", "json"])).unwrap();
    assert_eq!(r["result"]["expansion"], "2*x1^2/x0^3 - x2/x0^2");
    assert_eq!(r["tables"]["terms"][0]["coefficient"], "2");

    let r: Value =
        serde_json::from_str(&stdout(&["expand", "--poly", "1/3*x1", "--format", "json"])).unwrap();
    assert_eq!(r["tables"]["terms"][0]["coefficient"], "-1/3");

    let r: Value = serde_json::from_str(&stdout(&[
        "bijection",
        "--n",
        "4",
        "--mu",
        "2,1,0",
        "--format",
        "json",
    ]))
    .unwrap();
    assert_eq!(r["result"]["bijective"], true);
    let pairs: Vec<(String, String)> = r["tables"]["mapping"]
        .as_array()
        .unwrap()
        .iter()
        .map(|p| {
            (
                p["omega"].as_str().unwrap().into(),
                p["sigma"].as_str().unwrap().into(),
            )
        })
        .collect();
    assert_eq!(
        pairs,
        vec![
            ("(1,2,1)".into(), "(2,1,1)".into()),
            ("(2,1,1)".into(), "(1,1,2)".into())
        ]
    );

    let r: Value = serde_json::from_str(&stdout(&[
        "identity",
        "--prop",
        "corollary",
        "--n",
        "4",
        "--k2",
        "1",
        "--format",
        "json",
    ]))
    .unwrap();
    let witnesses = r["tables"]["witnesses"].as_array().unwrap();
    assert!(witnesses
        .iter()
        .any(|w| w["parameters"] == "n=4 k2=1 mu=(1,0,1)" && w["left"] == "1" && w["right"] == "0"));

    assert_eq!(
        stdout(&["derive", "--poly", "x1*x0", "--format", "csv"]),
        "field,value\npoly,x1*x0\nderivative,x2*x0 + x1^2\n"
    );
    let csv = stdout(&["dims", "--n", "3", "--format", "csv"]);
    assert!(csv.starts_with("n,d,l,formula,solver\n3,2,0,1,1\n"), "{csv}");
}

#[test]
fn exit_codes_and_diagnostics() {
    let out = jetsec(&["member", "--poly", "x^2", "--n", "3"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("column 2"));

    for args in [
        &["solve", "--n", "4", "--d", "2", "--bogus"][..],
        &["frobnicate"],
        &["solve", "--n", "3", "--d", "4"],
        &["identity", "--prop", "cis", "--n", "5..4"],
        &["basis", "--n", "4", "--d", "3"],
        &["bijection", "--n", "4", "--mu", "2,x,0"],
        &["bijection", "--n", "4", "--mu", "0,2,0"],
        &["member", "--poly", "0", "--n", "3"],
        &["solve", "--n", "4", "--d", "2", "--format", "yaml"],
    ] {
        let out = jetsec(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(out.stdout.is_empty(), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }

    let out = jetsec(&["solve", "--n", "40", "--d", "20"]);
    assert_eq!(out.status.code(), Some(3));
    assert!(out.stdout.is_empty());
    assert!(String::from_utf8_lossy(&out.stderr).contains("200000"));

    assert_eq!(jetsec(&["--help"]).status.code(), Some(0));
}

#[test]
fn out_flag_and_determinism() {
    let dir = std::env::temp_dir().join(format!("jetsec-cli-test-{}", std::process::id()));
    std::fs::create_dir_all(&dir).unwrap();
    let file = dir.join("report.json");
    let out = jetsec(&[
        "solve",
        "--n",
        "5",
        "--d",
        "3",
        "--format",
        "json",
        "--out",
        file.to_str().unwrap(),
    ]);
    assert!(out.status.success());
    assert!(out.stdout.is_empty());
    let written = std::fs::read_to_string(&file).unwrap();
    assert_eq!(
        written,
        stdout(&["solve", "--n", "5", "--d", "3", "--format", "json"])
    );

    // refused queries never produce a report file
    let refused = dir.join("refused.json");
    let out = jetsec(&[
        "solve",
        "--n",
        "40",
        "--d",
        "20",
        "--out",
        refused.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(3));
    assert!(!refused.exists());
    std::fs::remove_dir_all(&dir).unwrap();

    let args = ["identity", "--prop", "corollary", "--n", "4..8"];
    let a = stdout(&args);
    let b = Command::new(env!("CARGO_BIN_EXE_jetsec"))
        .args(args)
        .env("LC_ALL", "de_DE.UTF-8")
        .env("LANG", "tr_TR.UTF-8")
        .output()
        .unwrap();
    assert_eq!(a.as_bytes(), &b.stdout[..]);
}
