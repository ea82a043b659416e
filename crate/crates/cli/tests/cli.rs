use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_periplectic")).args(args).output().expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn golden(name: &str) -> Value {
    let path: PathBuf = [env!("CARGO_MANIFEST_DIR"), "tests", "golden", name].iter().collect();
    serde_json::from_str(&std::fs::read_to_string(path).unwrap()).unwrap()
}

fn check_golden(name: &str, args: &[&str]) {
    let mut full = vec!["--json"];
    full.extend_from_slice(args);
    let out = run(&full);
    assert_eq!(out.status.code(), Some(0), "{args:?}: {}", String::from_utf8_lossy(&out.stderr));
    let got: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(got, golden(name), "{args:?}");
}

#[test]
fn golden_outputs() {
    check_golden("diagram_n2_m1_0.json", &["diagram", "--n", "2", "--lambda", "-1,0"]);
    check_golden("block_n3_0_0_0.json", &["block", "--n", "3", "--lambda", "0,0,0"]);
    check_golden("sdim_standard_n2_m1_0.json", &["sdim", "--n", "2", "--lambda", "-1,0", "--kind", "standard"]);
    check_golden("simple_n2_m1_0.json", &["simple", "--n", "2", "--lambda", "-1,0"]);
    check_golden("translate_n2_m1_0_w0_m1.json", &["translate", "--n", "2", "--lambda", "-1,0", "--word", "0,-1"]);
    check_golden("ds_n3_0_0_0_r2.json", &["ds", "--n", "3", "--lambda", "0,0,0", "--rank", "2"]);
}

#[test]
fn plain_text_scalars() {
    assert_eq!(stdout(&run(&["block", "--n", "3", "--lambda", "0,0,0"])).trim(), "1");
    assert_eq!(stdout(&run(&["block", "--n", "2", "--lambda", "-1,0"])).trim(), "-2");
    assert_eq!(stdout(&run(&["sdim", "--n", "2", "--lambda", "-1,0", "--kind", "simple"])).trim(), "0");
    assert_eq!(stdout(&run(&["sdim", "--n", "2", "--lambda", "-3,-3"])).trim(), "1");
    let diagram = stdout(&run(&["diagram", "--n", "2", "--lambda", "-1,0"]));
    assert!(diagram.contains("kappa = -2"));
}

#[test]
fn verify_exit_codes() {
    let ok = run(&["verify", "kw", "--n", "2", "--bound", "3"]);
    assert_eq!(ok.status.code(), Some(0));
    assert!(stdout(&ok).trim_end().ends_with("kw: 13/13 passed"));

    let failing = run(&["verify", "typicalize", "--n", "2", "--bound", "1"]);
    assert_eq!(failing.status.code(), Some(1));
    assert!(stdout(&failing).contains("FAIL L(0,0) sign=+"));

    let report: Value = serde_json::from_str(&stdout(&run(&["--json", "verify", "tl", "--n", "1", "--bound", "1"]))).unwrap();
    assert_eq!(report["suite"], "tl");
    assert!(report["cases"].as_array().unwrap().iter().all(|c| c["pass"] == true));
}

#[test]
fn invalid_input_exits_two() {
    let cases: &[&[&str]] = &[
        &["block", "--n", "2", "--lambda", "0,-1"],
        &["block", "--n", "2", "--lambda", "0"],
        &["block", "--n", "2", "--lambda", "0,x"],
        &["block", "--n", "0", "--lambda", ""],
        &["sdim", "--n", "2", "--lambda", "0,9"],
        &["ds", "--n", "2", "--lambda", "0,0", "--rank", "3"],
        &["verify", "nope", "--n", "2"],
        &["verify", "kw", "--n", "0"],
        &["verify", "kw", "--n", "2", "--bound", "9"],
        &["frobnicate"],
    ];
    for args in cases {
        let out = run(args);
        assert_eq!(out.status.code(), Some(2), "{args:?}");
        assert!(!out.stderr.is_empty(), "{args:?}");
    }
}
