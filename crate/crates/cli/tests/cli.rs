use std::path::PathBuf;
use std::process::{Command, Output};

use serde_json::Value;

fn corpus(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("corpus")
        .join(name)
        .display()
        .to_string()
}

fn fixture(name: &str) -> String {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(name)
        .display()
        .to_string()
}

fn dpglue(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_dpglue"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8(o.stdout.clone()).unwrap()
}

fn stderr(o: &Output) -> String {
    String::from_utf8(o.stderr.clone()).unwrap()
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid JSON")
}

#[test]
fn tame_corpus_is_gorenstein_with_chi_one() {
    let out = dpglue(&["run", &corpus("tame.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let scenarios = v["scenarios"].as_array().unwrap();
    assert!(scenarios.len() >= 20);
    for s in scenarios {
        let r = &s["report"];
        assert_eq!(r["gorenstein"], true, "{r}");
        assert_eq!(r["tame"], true, "{r}");
        assert_eq!(r["chi"], 1, "{r}");
        assert_eq!(r["h1"], 0, "{r}");
        assert_eq!(s["expectation"]["matched"], true);
    }
    assert_eq!(v["summary"]["mismatched"], 0);
}

#[test]
fn wild_corpus_reports_negative_chi() {
    let out = dpglue(&["run", &corpus("wild.json"), "--format", "json"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    let v = json(&out);
    let by_name = |name: &str| {
        v["scenarios"]
            .as_array()
            .unwrap()
            .iter()
            .find(|s| s["report"]["name"] == name)
            .map(|s| s["report"].clone())
            .unwrap()
    };
    for name in ["one wild cusp, p = 3", "two wild cusps, p = 2"] {
        let r = by_name(name);
        assert_eq!((r["chi"].as_i64(), r["h1"].as_u64()), (Some(-1), Some(2)), "{r}");
        assert_eq!(r["oracle"]["h1"], 2);
    }
    assert_eq!(by_name("N = 2, p = 5")["h1"], 8);
    assert_eq!(by_name("pole order prime to p")["gorenstein"], false);
}

#[test]
fn degree12_corpus_matches() {
    let out = dpglue(&["run", &corpus("degree12.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("5 matched, 0 mismatched"));
}

#[test]
fn malformed_derivation_is_an_input_error() {
    let out = dpglue(&["run", &corpus("malformed.json")]);
    assert_eq!(out.status.code(), Some(2));
    let err = stderr(&out);
    assert!(err.contains("scenarios[0]") && err.contains("b_2 is zero"), "{err}");
    assert!(stdout(&out).is_empty());
}

#[test]
fn syntax_errors_carry_line_and_column() {
    let out = dpglue(&["run", &fixture("trailing_comma.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("line 4, column"), "{}", stderr(&out));
}

#[test]
fn unknown_fields_are_rejected() {
    let out = dpglue(&["run", &fixture("unknown_field.json")]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("unknown field"), "{}", stderr(&out));
}

#[test]
fn missing_file_is_an_input_error() {
    let out = dpglue(&["run", &fixture("does_not_exist.json")]);
    assert_eq!(out.status.code(), Some(2));
}

#[test]
fn a_single_mismatch_fails_the_run() {
    let out = dpglue(&["run", &corpus("tame.json"), &fixture("mismatch.json")]);
    assert_eq!(out.status.code(), Some(1));
    let text = stdout(&out);
    assert!(text.contains("MISMATCH chi: expected 0, got 1"), "{text}");
    assert!(text.contains("1 mismatched"), "{text}");
}

#[test]
fn output_is_deterministic_and_ordered() {
    let files = [corpus("tame.json"), corpus("wild.json"), corpus("degree12.json")];
    let mut args: Vec<&str> = vec!["run"];
    args.extend(files.iter().map(String::as_str));
    let serial = dpglue(&[&args[..], &["--jobs", "1"]].concat());
    let parallel = dpglue(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(serial.stdout, parallel.stdout);
    let again = dpglue(&[&args[..], &["--jobs", "4"]].concat());
    assert_eq!(parallel.stdout, again.stdout);
    let text = stdout(&serial);
    let tame = text.find("tame.json ::").unwrap();
    let wild = text.find("wild.json ::").unwrap();
    let deg = text.find("degree12.json ::").unwrap();
    assert!(tame < wild && wild < deg);
}

#[test]
fn catalog_blocks_match_the_table() {
    let out = dpglue(&["catalog", "--blocks", "--a-max", "5", "--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let v = json(&out);
    let rows = v["blocks"].as_array().unwrap();
    assert!(rows.len() >= 10);
    for r in rows {
        assert_eq!(r["ok"], true, "{r}");
        assert_eq!(r["degree"], r["expected_degree"]);
    }
    assert!(v.get("degree12").is_none());
}

#[test]
fn catalog_lists_three_degree_one_equations() {
    let out = dpglue(&["catalog", "--degree12", "--format", "json"]);
    let v = json(&out);
    let rows = v["degree12"].as_array().unwrap();
    let degree_one = rows.iter().filter(|r| r["degree"] == 1).count();
    assert_eq!(degree_one, 3);
    assert!(rows.iter().all(|r| r["verified"] == true));
    let text = stdout(&dpglue(&["catalog", "--degree12"]));
    assert!(text.contains("z^2 - y^3 = 0"));
}

#[test]
fn catalog_json_round_trips() {
    let out = dpglue(&["catalog", "--format", "json"]);
    let text = stdout(&out);
    let v: Value = serde_json::from_str(&text).unwrap();
    assert_eq!(serde_json::to_string_pretty(&v).unwrap() + "\n", text);
}

#[test]
fn parametrizations_verify() {
    let out = dpglue(&["verify-param", &corpus("params.json")]);
    assert_eq!(out.status.code(), Some(0), "{}", stdout(&out));
    assert!(stdout(&out).contains("0 failed"));
    let bad = dpglue(&["verify-param", &fixture("bad_param.json")]);
    assert_eq!(bad.status.code(), Some(1));
    assert!(stdout(&bad).contains("shifted: FAILS"));
}

#[test]
fn bad_arguments_are_rejected() {
    let out = dpglue(&["run", &corpus("tame.json"), "--format", "yaml"]);
    assert_eq!(out.status.code(), Some(2));
}
