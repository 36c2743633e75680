use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;
use witt_core::parse_derivation;

fn witt(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_witt"))
        .args(args)
        .env("NO_COLOR", "1")
        .output()
        .expect("binary runs")
}

fn witt_json(args: &[&str]) -> (Output, Value) {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let mut full: Vec<&str> = args.to_vec();
    let p = path.to_str().unwrap();
    full.extend(["--json", p]);
    let out = witt(&full);
    let text = std::fs::read_to_string(&path).unwrap_or_else(|_| panic!("no report for {args:?}"));
    (out, serde_json::from_str(&text).unwrap())
}

fn schema() -> jsonschema::JSONSchema {
    let path = Path::new(env!("CARGO_MANIFEST_DIR")).join("schema/report.v1.json");
    let raw: Value = serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap();
    jsonschema::JSONSchema::compile(&raw).expect("schema compiles")
}

fn assert_valid(report: &Value) {
    let schema = schema();
    let msgs: Vec<String> = match schema.validate(report) {
        Ok(()) => return,
        Err(errors) => errors
            .map(|e| format!("{} at {}", e, e.instance_path))
            .collect(),
    };
    panic!("schema violations: {msgs:#?}");
}

#[test]
fn every_command_emits_a_valid_report() {
    let runs: &[&[&str]] = &[
        &["dims", "--n", "3", "--max-degree", "2"],
        &[
            "decompose",
            "--n",
            "2",
            "--max-degree",
            "2",
            "--samples",
            "5",
        ],
        &["hw", "--n", "3", "--max-degree", "2"],
        &["products", "--n", "2", "--max-degree", "2"],
        &["iso", "--n", "2", "--max-degree", "1"],
        &["generates", "--n", "2", "--expr", "x1^2 d1"],
        &["generates", "--n", "2", "--expr", "x1^2 d1", "--oracle"],
        &["verify", "--n", "2", "--max-degree", "1", "--samples", "5"],
    ];
    for args in runs {
        let (out, report) = witt_json(args);
        assert_eq!(
            out.status.code(),
            Some(0),
            "{args:?}: {}",
            String::from_utf8_lossy(&out.stdout)
        );
        assert_valid(&report);
        assert_eq!(report["command"], args[0]);
        assert_eq!(report["summary"]["ok"], true);
    }
}

#[test]
fn schema_rejects_floats_and_unknown_fields() {
    let (_, mut report) = witt_json(&["dims", "--max-degree", "1"]);
    report["results"][0]["checks"][0]["data"]["dim_w"] = serde_json::json!(4.5);
    assert!(!schema().is_valid(&report));

    let (_, mut report) = witt_json(&["dims", "--max-degree", "1"]);
    report["summary"]["extra"] = serde_json::json!(1);
    assert!(!schema().is_valid(&report));
}

#[test]
fn dims_table_matches_closed_forms() {
    let (_, report) = witt_json(&["dims", "--n", "2", "--max-degree", "3"]);
    let rows: Vec<(u64, u64, u64)> = report["results"][0]["checks"]
        .as_array()
        .unwrap()
        .iter()
        .map(|c| {
            let d = &c["data"];
            (
                d["dim_w"].as_u64().unwrap(),
                d["dim_m"].as_u64().unwrap(),
                d["dim_n"].as_u64().unwrap(),
            )
        })
        .collect();
    assert_eq!(rows, vec![(4, 3, 1), (6, 4, 2), (8, 5, 3), (10, 6, 4)]);
}

#[test]
fn generates_example_reports_degree_one_deficit() {
    let (out, report) = witt_json(&[
        "generates",
        "--n",
        "2",
        "--expr",
        "x1*(x1 d1 + x2 d2)",
        "--oracle",
    ]);
    assert_eq!(out.status.code(), Some(0));
    let data = &report["results"][0]["checks"][0]["data"];
    assert_eq!(data["generates"], false);
    assert_eq!(
        data["reasons"],
        serde_json::json!(["degree_one_euler_multiple"])
    );
    assert_eq!(data["per_degree"]["1"], serde_json::json!([2, 6]));
    assert!(data["deficits"]
        .as_array()
        .unwrap()
        .contains(&serde_json::json!(1)));
    assert_eq!(data["agrees"], true);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| witt(args).status.code();
    assert_eq!(code(&["dims"]), Some(0));
    assert_eq!(
        code(&["generates", "--expr", "x1^2 d1", "--expect", "true"]),
        Some(0)
    );
    assert_eq!(
        code(&["generates", "--expr", "x1*E", "--expect", "true"]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "generates",
            "--expr",
            "x1^2 d2",
            "--oracle",
            "--expect",
            "true"
        ]),
        Some(1)
    );
    assert_eq!(code(&["generates", "--expr", "x3 d1"]), Some(2));
    assert_eq!(code(&["generates", "--expr", "x1^ d1"]), Some(2));
    assert_eq!(
        code(&[
            "generates",
            "--expr",
            "x1^4 d1",
            "--oracle",
            "--cutoff",
            "2"
        ]),
        Some(2)
    );
    assert_eq!(code(&["dims", "--n", "1"]), Some(2));
    assert_eq!(code(&["frobnicate"]), Some(2));
    assert_eq!(code(&[]), Some(2));
}

#[test]
fn failing_report_is_still_written() {
    let (out, report) = witt_json(&["generates", "--expr", "x1*E", "--expect", "true"]);
    assert_eq!(out.status.code(), Some(1));
    assert_valid(&report);
    assert_eq!(report["summary"]["ok"], false);
    assert_eq!(report["summary"]["failed"], 1);
    assert!(String::from_utf8_lossy(&out.stdout).contains("FAIL"));
}

#[test]
fn reports_are_reproducible() {
    let args = [
        "decompose",
        "--n",
        "3",
        "--max-degree",
        "1",
        "--samples",
        "10",
        "--seed",
        "9",
    ];
    let (_, a) = witt_json(&args);
    let (_, b) = witt_json(&args);
    assert_eq!(
        serde_json::to_string(&a).unwrap(),
        serde_json::to_string(&b).unwrap()
    );
    assert_eq!(a["parameters"]["seed"], 9);
}

#[test]
fn no_color_codes_when_piped() {
    let out = Command::new(env!("CARGO_BIN_EXE_witt"))
        .arg("dims")
        .output()
        .unwrap();
    assert!(!String::from_utf8_lossy(&out.stdout).contains('\x1b'));
}

#[test]
fn expression_corpus_round_trips() {
    let corpus = [
        (2, "x1^2 d1 - 2/3*x1*x2 d2"),
        (3, "d1 + d2 + d3"),
        (2, "x1*(x1 d1 + x2 d2)"),
        (3, "x1^2*E - 7/4 d3"),
        (2, "-d1 + x2^5 d2"),
        (2, "(x1 - x2) * (x1 + x2) d1"),
        (4, "x1*x2*x3*x4 d4 - x4 d1"),
        (2, "0"),
        (2, "3 x1 x2 d1"),
        (3, "12/8*x3^3 d2 + 1/3 d1"),
    ];
    for (n, text) in corpus {
        let d = parse_derivation(text, n).unwrap_or_else(|e| panic!("{text}: {e}"));
        let printed = d.to_string();
        assert_eq!(
            parse_derivation(&printed, n).unwrap(),
            d,
            "{text} -> {printed}"
        );
        assert_eq!(parse_derivation(&printed, n).unwrap().to_string(), printed);
    }
}
