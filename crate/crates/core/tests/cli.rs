use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn golden(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/golden")
        .join(name)
}

fn spikelogic(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_spikelogic"))
        .args(args)
        .env_remove("SPIKELOGIC_CONFIG")
        .output()
        .expect("binary runs")
}

fn check_golden(args: &[&str], file: &str, code: i32) {
    let out = spikelogic(args);
    assert_eq!(
        out.status.code(),
        Some(code),
        "{args:?}: {}",
        String::from_utf8_lossy(&out.stderr)
    );
    let expected = std::fs::read(golden(file)).expect("golden file");
    assert!(
        out.stdout == expected,
        "{args:?} output differs from {file}:\n{}",
        String::from_utf8_lossy(&out.stdout)
    );
}

fn json(args: &[&str]) -> Value {
    let out = spikelogic(args);
    serde_json::from_slice(&out.stdout).expect("json output")
}

#[test]
fn truth_table_goldens() {
    check_golden(
        &["truth-table", "--gate", "and-or"],
        "truth_table_and_or.json",
        0,
    );
    check_golden(
        &["truth-table", "--gate", "full-adder"],
        "truth_table_full_adder.json",
        0,
    );
    check_golden(
        &["truth-table", "--gate", "full-adder", "--format", "csv"],
        "truth_table_full_adder.csv",
        0,
    );
}

#[test]
fn compare_goldens() {
    check_golden(
        &[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "network",
        ],
        "compare_and_or_network.json",
        0,
    );
    check_golden(
        &[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "single-perceptron",
            "--expect",
            "logical",
        ],
        "compare_and_or_single_perceptron.json",
        0,
    );
}

#[test]
fn trace_golden() {
    check_golden(
        &["trace", "--gate", "full-adder", "--inputs", "1,0,1"],
        "trace_full_adder_101.json",
        0,
    );
}

#[test]
fn output_is_byte_stable() {
    let a = spikelogic(&[
        "compare",
        "--gate",
        "full-adder",
        "--a",
        "memristor",
        "--b",
        "closed-form",
        "--format",
        "csv",
    ]);
    let b = spikelogic(&[
        "compare",
        "--gate",
        "full-adder",
        "--a",
        "memristor",
        "--b",
        "closed-form",
        "--format",
        "csv",
    ]);
    assert_eq!(a.stdout, b.stdout);
}

#[test]
fn truth_table_values() {
    let doc = json(&["truth-table", "--gate", "and-or"]);
    assert_eq!(doc["rows"].as_array().unwrap().len(), 4);
    assert_eq!(doc["rows"][0]["readout"], 6.0);
    assert_eq!(doc["unit_scale_amps"], 1e-7);

    let doc = json(&[
        "truth-table",
        "--gate",
        "and-or",
        "--impl",
        "single-perceptron",
    ]);
    let row = &doc["rows"][1];
    assert_eq!(row["inputs"], serde_json::json!([1, 0]));
    assert!((row["readout"].as_f64().unwrap() - 3.0).abs() < 0.01);

    let csv = String::from_utf8(
        spikelogic(&["truth-table", "--gate", "full-adder", "--format", "csv"]).stdout,
    )
    .unwrap();
    let lines: Vec<&str> = csv.lines().filter(|l| !l.starts_with('#')).collect();
    assert_eq!(lines.len(), 9);
    let header: Vec<&str> = lines[0].split(',').collect();
    let last: Vec<&str> = lines[8].split(',').collect();
    let readout = header.iter().position(|c| *c == "readout").unwrap();
    assert!((last[readout].parse::<f64>().unwrap() + 0.1).abs() < 1e-9);
}

#[test]
fn trace_values() {
    let doc = json(&["trace", "--gate", "full-adder", "--inputs", "1,1,0"]);
    let steps: Vec<f64> = doc["steps"]
        .as_array()
        .unwrap()
        .iter()
        .map(|s| s["i_measured"].as_f64().unwrap())
        .collect();
    assert_eq!(steps, vec![-18.0, -9.0, 0.05]);

    let doc = json(&["trace", "--gate", "and-or", "--inputs", "0,0"]);
    for s in doc["steps"].as_array().unwrap() {
        assert!(s["i_measured"].as_f64().unwrap().abs() < 0.01);
    }
    assert!(doc["readout"].as_f64().unwrap().abs() < 0.01);

    let doc = json(&["trace", "--gate", "full-adder", "--inputs", "1,0,1"]);
    assert_eq!(doc["steps"][1]["event"], "BOUNCE_BACK");
    assert_eq!(doc["steps"][2]["event"], "FRICTION");
    assert!((doc["readout"].as_f64().unwrap() - 10.475).abs() < 0.01);
}

#[test]
fn exit_codes() {
    let code = |args: &[&str]| spikelogic(args).status.code();
    assert_eq!(
        code(&[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "network"
        ]),
        Some(0)
    );
    // logical-only agreement fails the default numeric expectation
    assert_eq!(
        code(&[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "single-perceptron"
        ]),
        Some(1)
    );
    assert_eq!(
        code(&[
            "compare",
            "--gate",
            "full-adder",
            "--a",
            "memristor",
            "--b",
            "closed-form",
            "--tolerance",
            "0.05"
        ]),
        Some(0)
    );
    assert_eq!(
        code(&[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "memristor",
            "--set",
            "and_level=3.5"
        ]),
        Some(0)
    );
    assert_eq!(
        code(&[
            "compare",
            "--gate",
            "and-or",
            "--a",
            "memristor",
            "--b",
            "binary-fa"
        ]),
        Some(2)
    );
    assert_eq!(
        code(&["trace", "--gate", "full-adder", "--inputs", "1,0"]),
        Some(2)
    );
    assert_eq!(
        code(&["trace", "--gate", "and-or", "--inputs", "1,x"]),
        Some(2)
    );
    assert_eq!(
        code(&["truth-table", "--gate", "and-or", "--set", "bogus=1"]),
        Some(2)
    );
    assert_eq!(code(&["truth-table", "--gate", "nand"]), Some(2));
}

#[test]
fn mismatch_exits_one() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let net = spikelogic(&[
        "network-spec",
        "--gate",
        "and-or",
        "--impl",
        "single-perceptron",
    ]);
    let text = String::from_utf8(net.stdout)
        .unwrap()
        .replace("-5.5", "-1.0");
    let path = dir.join("loose_and.json");
    std::fs::write(&path, text).unwrap();
    let out = spikelogic(&[
        "compare",
        "--gate",
        "and-or",
        "--a",
        "memristor",
        "--b",
        "network",
        "--network",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(1));
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["verdict"], "MISMATCH");
}

#[test]
fn network_spec_round_trips_through_cli() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let net = spikelogic(&["network-spec", "--gate", "and-or"]);
    assert_eq!(net.status.code(), Some(0));
    let path = dir.join("spmlg.json");
    std::fs::write(&path, &net.stdout).unwrap();
    let from_file = spikelogic(&[
        "truth-table",
        "--gate",
        "and-or",
        "--impl",
        "network",
        "--network",
        path.to_str().unwrap(),
    ]);
    let built_in = spikelogic(&["truth-table", "--gate", "and-or", "--impl", "network"]);
    assert_eq!(from_file.stdout, built_in.stdout);

    std::fs::write(&path, "{\"version\": 2}").unwrap();
    let out = spikelogic(&[
        "truth-table",
        "--gate",
        "and-or",
        "--impl",
        "network",
        "--network",
        path.to_str().unwrap(),
    ]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn config_precedence() {
    let dir = tempfile::tempdir().unwrap();
    let dir = dir.path();
    let path = dir.join("params.json");
    std::fs::write(&path, r#"{"x_one": -10.0, "and_level": 4.5}"#).unwrap();
    let path = path.to_str().unwrap();

    let doc = json(&["truth-table", "--gate", "and-or", "--config", path]);
    assert_eq!(doc["params"]["x_one"], -10.0);
    assert_eq!(doc["rows"][0]["readout"], 7.5);

    let doc = json(&[
        "truth-table",
        "--gate",
        "and-or",
        "--config",
        path,
        "--set",
        "x_one=-12",
    ]);
    assert_eq!(doc["params"]["x_one"], -12.0);
    assert_eq!(doc["params"]["and_level"], 4.5);

    let out = Command::new(env!("CARGO_BIN_EXE_spikelogic"))
        .args(["truth-table", "--gate", "and-or"])
        .env("SPIKELOGIC_CONFIG", path)
        .output()
        .unwrap();
    let doc: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(doc["params"]["x_one"], -10.0);
}
