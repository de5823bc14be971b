//! End-to-end tests of the binary: documented output forms, exit codes,
//! JSON report shape, and determinism of the seeded suites.

use std::process::{Command, Output};

fn qlyndon(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qlyndon"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

#[test]
fn tables_a2_prints_four_annotated_rows() {
    let out = qlyndon(&["tables", "--type", "A", "--rank", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("4 rows"), "{text}");
    assert_eq!(text.lines().count(), 5, "{text}");
    assert_eq!(text.matches("closed form agrees").count(), 4, "{text}");
    assert!(text.contains("[1^(1) 2^(1)]"), "{text}");
}

#[test]
fn tables_b2_prints_seven_rows() {
    let out = qlyndon(&["tables", "--type", "B", "--rank", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("7 rows"), "{text}");
    assert_eq!(text.matches("closed form agrees").count(), 7, "{text}");
    assert!(text.contains("[2^(1) 1 2]"), "{text}");
}

#[test]
fn tables_exceptional_types_skip_the_annotation() {
    let out = qlyndon(&["tables", "--type", "G", "--rank", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("16 rows"), "{text}");
    assert!(!text.contains("closed form"), "{text}");
}

#[test]
fn tables_json_reports_each_row() {
    let out = qlyndon(&["tables", "--type", "A", "--rank", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["type"], "A2");
    let rows = v["rows"].as_array().expect("rows array");
    assert_eq!(rows.len(), 4);
    for row in rows {
        assert_eq!(row["closed_form"], "agrees");
    }
    assert_eq!(rows[3]["word"], "[1^(1) 2^(1)]");
    assert_eq!(rows[3]["d"], 2);
}

#[test]
fn tables_rejects_aliased_low_ranks() {
    for (family, rank) in [("D", "3"), ("B", "1"), ("C", "1")] {
        let out = qlyndon(&["tables", "--type", family, "--rank", rank]);
        assert_eq!(out.status.code(), Some(2), "{family}{rank}");
        assert!(stderr(&out).contains("requires rank"), "{family}{rank}");
    }
}

#[test]
fn word_prints_the_documented_form() {
    let out = qlyndon(&["word", "--type", "B", "--rank", "2", "--root", "1,2", "--d", "1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2^(1) 1 2\n");
}

#[test]
fn word_extends_beyond_the_fundamental_window() {
    let out = qlyndon(&["word", "--type", "A", "--rank", "2", "--root", "1,1", "--d", "-1"]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "2 1^(-1)\n");
}

#[test]
fn word_latex_marks_exponent_one_letters() {
    let out = qlyndon(&[
        "word", "--type", "A", "--rank", "2", "--root", "1,1", "--d", "2", "--latex",
    ]);
    assert!(out.status.success());
    assert_eq!(stdout(&out), "\\ul{1}\\,\\ul{2}\n");
}

#[test]
fn word_json_carries_both_renderings() {
    let out = qlyndon(&[
        "word", "--type", "B", "--rank", "2", "--root", "1,2", "--d", "1", "--format", "json",
    ]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["word"], "[2^(1) 1 2]");
    assert_eq!(v["display"], "2^(1) 1 2");
    assert_eq!(v["root"], "a1 + 2 a2");
}

#[test]
fn word_rejects_bad_roots() {
    let wrong_len = qlyndon(&["word", "--type", "A", "--rank", "2", "--root", "1,1,1", "--d", "1"]);
    assert_eq!(wrong_len.status.code(), Some(2));
    let not_a_root = qlyndon(&["word", "--type", "A", "--rank", "2", "--root", "5,5", "--d", "1"]);
    assert_eq!(not_a_root.status.code(), Some(2));
    assert!(stderr(&not_a_root).contains("not a positive root"));
}

#[test]
fn dictionary_groups_by_first_letter() {
    let out = qlyndon(&["dictionary", "--type", "A", "--rank", "2"]);
    assert!(out.status.success());
    let text = stdout(&out);
    assert!(text.contains("1^(1):"), "{text}");
    assert!(text.contains("2^(1):"), "{text}");
    assert!(text.contains("l(a1 + a2, 2)"), "{text}");

    let filtered = qlyndon(&["dictionary", "--type", "A", "--rank", "2", "--letter", "2"]);
    let text = stdout(&filtered);
    assert!(!text.contains("1^(1):"), "{text}");
    assert!(text.contains("2^(1):"), "{text}");

    let bad = qlyndon(&["dictionary", "--type", "A", "--rank", "2", "--letter", "9"]);
    assert_eq!(bad.status.code(), Some(2));
}

#[test]
fn dictionary_json_lists_every_fundamental_word() {
    let out = qlyndon(&["dictionary", "--type", "B", "--rank", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    let total: usize = v["letters"]
        .as_array()
        .expect("letters array")
        .iter()
        .map(|g| g["words"].as_array().expect("words array").len())
        .sum();
    assert_eq!(total, 7);
}

#[test]
fn verify_examples_from_the_interface_pass() {
    let convexity = qlyndon(&["verify", "convexity", "--type", "A", "--rank", "2", "--window", "2"]);
    assert!(convexity.status.success(), "{}", stderr(&convexity));
    let weyl = qlyndon(&["verify", "weyl-order", "--type", "A", "--rank", "3", "--count", "25"]);
    assert!(weyl.status.success(), "{}", stderr(&weyl));
}

#[test]
fn verify_emits_a_json_report() {
    let out = qlyndon(&["verify", "monotone", "--type", "B", "--rank", "2", "--format", "json"]);
    assert!(out.status.success());
    let v: serde_json::Value = serde_json::from_str(&stdout(&out)).expect("valid JSON");
    assert_eq!(v["suite"], "monotone");
    assert_eq!(v["type"], "B2");
    assert_eq!(v["status"], "pass");
    assert!(v["cases"].as_u64().expect("cases") > 0);
    assert!(v["elapsed_ms"].is_u64());
    assert_eq!(v["params"]["window"], 2);
}

#[test]
fn composition_is_deterministic_for_a_fixed_seed() {
    let args = [
        "verify", "composition", "--type", "A", "--rank", "2", "--count", "6", "--seed", "7",
        "--format", "json",
    ];
    let first = qlyndon(&args);
    assert!(first.status.success(), "{}", stderr(&first));
    let second = qlyndon(&args);
    let a: serde_json::Value = serde_json::from_str(&stdout(&first)).expect("valid JSON");
    let b: serde_json::Value = serde_json::from_str(&stdout(&second)).expect("valid JSON");
    assert_eq!(a["cases"], b["cases"]);
    assert_eq!(a["params"], b["params"]);
}

#[test]
fn fo_constraints_respect_the_variable_budget() {
    let ok = qlyndon(&["verify", "fo-constraints", "--type", "A", "--rank", "2"]);
    assert!(ok.status.success(), "{}", stderr(&ok));
    let over = qlyndon(&["verify", "fo-constraints", "--type", "A", "--rank", "2", "--count", "5"]);
    assert_eq!(over.status.code(), Some(2));
    assert!(stderr(&over).contains("variable budget"), "{}", stderr(&over));
}

#[test]
fn workers_env_is_validated() {
    let bad = Command::new(env!("CARGO_BIN_EXE_qlyndon"))
        .args(["verify", "monotone", "--type", "A", "--rank", "2"])
        .env("QLYNDON_WORKERS", "abc")
        .output()
        .expect("binary runs");
    assert_eq!(bad.status.code(), Some(2));
    let ok = Command::new(env!("CARGO_BIN_EXE_qlyndon"))
        .args(["verify", "monotone", "--type", "A", "--rank", "2"])
        .env("QLYNDON_WORKERS", "2")
        .output()
        .expect("binary runs");
    assert!(ok.status.success());
}

#[test]
fn unknown_suites_are_usage_errors() {
    let out = qlyndon(&["verify", "nonsense", "--type", "A", "--rank", "2"]);
    assert_eq!(out.status.code(), Some(2));
}
