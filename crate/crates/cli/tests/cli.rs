use std::path::{Path, PathBuf};
use std::process::{Command, Output};

use serde_json::Value;

fn data(name: &str) -> PathBuf {
    Path::new(env!("CARGO_MANIFEST_DIR")).join("tests/data").join(name)
}

fn dimcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dimcalc"))
        .args(args)
        .output()
        .expect("dimcalc runs")
}

fn eval(file: &str, flags: &[&str]) -> Output {
    let path = data(file);
    let mut args = vec!["eval", path.to_str().unwrap()];
    args.extend_from_slice(flags);
    dimcalc(&args)
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

#[test]
fn text_reports_match_golden_files() {
    for name in ["mixed_pair", "self_tensor", "short_maximal", "tower"] {
        let out = eval(&format!("{name}.dim"), &[]);
        assert_eq!(out.status.code(), Some(0), "{name}: {}", stderr(&out));
        let golden = Path::new(env!("CARGO_MANIFEST_DIR")).join(format!("tests/golden/{name}.txt"));
        let want = std::fs::read_to_string(golden).unwrap();
        assert_eq!(stdout(&out), want, "{name}");
    }
}

#[test]
fn mixed_pair_line() {
    let out = eval("mixed_pair.dim", &[]);
    assert!(stdout(&out).lines().any(|l| l == "(tensor-dim R1 R2) = 4 [Thm 1.9]"));
}

#[test]
fn unchecked_formula_and_true_value_in_one_report() {
    let text = stdout(&eval("short_maximal.dim", &[]));
    assert!(text.contains("(raw-thm19 R R) = 3"));
    assert!(text.contains("(tensor-dim R R) = 4"));
}

#[test]
fn trace_flag_prints_derivations() {
    let text = stdout(&eval("tower.dim", &["--trace"]));
    assert!(text.contains("    F5-Thm3.2 = 5"));
    assert!(text.contains("[FAIL] D2 is AF-certified"));
    assert!(text.contains("max{2 + 2, 2 + 3} = 5"));
}

#[test]
fn json_lines_are_schema_stable() {
    let text = stdout(&eval("mixed_pair.dim", &["--json"]));
    let objects: Vec<Value> = text.lines().map(|l| serde_json::from_str(l).unwrap()).collect();
    assert_eq!(objects.len(), 9);
    for o in &objects {
        for key in ["query", "value", "rule", "hypothesisChecks", "trace"] {
            assert!(o.get(key).is_some(), "missing {key} in {o}");
        }
        if let Some([lo, hi]) = o["value"].get("interval").and_then(Value::as_array).map(Vec::as_slice) {
            assert!(lo.as_u64() <= hi.as_u64());
        }
    }
    let dim = objects.iter().find(|o| o["query"] == "(tensor-dim R1 R2)").unwrap();
    assert_eq!(dim["value"], serde_json::json!({"exact": 4}));
    assert_eq!(dim["rule"], "F4-Thm1.9");
    assert!(dim["hypothesisChecks"].as_array().unwrap().iter().all(|c| c["passed"] == true));
}

#[test]
fn interval_values_in_json() {
    let text = stdout(&eval("tower.dim", &["--json"]));
    let vdim: Value = text
        .lines()
        .map(|l| serde_json::from_str::<Value>(l).unwrap())
        .find(|o| o["query"] == "(tensor-vdim R1 R2)")
        .unwrap();
    assert_eq!(vdim["value"], serde_json::json!({"interval": [5, 6]}));
    assert_eq!(vdim["rule"], "V2-UpperBound");
}

#[test]
fn errors_name_spans_and_exit_one() {
    let out = eval("unbound.dim", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("unbound.dim:3:15: error: unbound name `B`"));
    assert_eq!(stdout(&out), "(dim A) = 0 [invariants]\n");

    let out = eval("syntax.dim", &[]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stderr(&out).contains("syntax.dim:1:24: error"));
    assert!(stdout(&out).is_empty());

    let out = dimcalc(&["eval", "/nonexistent/file.dim"]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn check_command_passes() {
    let out = dimcalc(&["check", "--seed", "7", "--count", "200", "--depth", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).starts_with("200 pairs (seed 7, depth <= 2"));

    let out = dimcalc(&["check", "--count", "50", "--json"]);
    let report: Value = serde_json::from_str(&stdout(&out)).unwrap();
    assert_eq!(report["pairs"], 50);
    assert_eq!(report["properties"].as_array().unwrap().len(), 8);
}

#[test]
fn check_rejects_depth_zero() {
    let out = dimcalc(&["check", "--depth", "0"]);
    assert_eq!(out.status.code(), Some(2));
}
