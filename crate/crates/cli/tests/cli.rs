//! End-to-end tests of the `codeloop` binary: exit codes, output contracts,
//! and format handling for every subcommand.

use std::io::Write;
use std::process::{Command, Output};

use codeloop_core::{CayleyTable, CubicSpace, DoublyEvenCode};

fn run(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_codeloop"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout_of(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).expect("utf8 stdout")
}

fn stderr_of(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).expect("utf8 stderr")
}

fn code_of(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

#[test]
fn check_code_accepts_builtin() {
    let out = run(&["check-code", "--builtin", "hamming8"]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("length 8"), "{text}");
    assert!(text.contains("dimension 4"), "{text}");
    assert!(text.contains("PASS doubly-even"), "{text}");
    assert!(text.contains("weight-distribution 0:1 4:14 8:1"), "{text}");
}

#[test]
fn check_code_rejects_invalid_file_with_witness() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("bad.code");
    let mut f = std::fs::File::create(&path).unwrap();
    writeln!(f, "11100000").unwrap();
    writeln!(f, "00111000").unwrap();
    drop(f);
    let out = run(&["check-code", "--code", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 2);
    let text = stdout_of(&out);
    assert!(text.contains("FAIL doubly-even"), "{text}");
    assert!(text.contains("weight 3"), "{text}");
}

#[test]
fn check_code_operational_errors_exit_one() {
    let out = run(&["check-code", "--code", "/nonexistent/path.code"]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("error:"));

    let out = run(&["check-code", "--builtin", "bogus"]);
    assert_eq!(code_of(&out), 1);

    // malformed generator characters are parse errors, not validation ones
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("garbled.code");
    std::fs::write(&path, "01x1\n").unwrap();
    let out = run(&["check-code", "--code", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 1);

    // a cubic file is not a code input
    let out = run(&["check-code", "--cubic", "/nonexistent.cubic"]);
    assert_eq!(code_of(&out), 1);
}

#[test]
fn check_code_jsonl_lines_parse() {
    let out = run(&["check-code", "--builtin", "hamming8", "--format", "jsonl"]);
    assert_eq!(code_of(&out), 0);
    for line in stdout_of(&out).lines() {
        serde_json::from_str::<serde_json::Value>(line).expect("every line is JSON");
    }
}

#[test]
fn constants_emits_reparsable_cubic_format() {
    let out = run(&["constants", "--builtin", "hamming8"]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    assert!(text.contains("alpha 1 2 3 1"), "{text}");
    let reparsed = CubicSpace::parse(&text).unwrap();
    let code = DoublyEvenCode::builtin("hamming8").unwrap();
    assert_eq!(reparsed, CubicSpace::from_code(&code).unwrap());

    let out = run(&["constants", "--builtin", "zero_2"]);
    let text = stdout_of(&out);
    assert!(text.contains("sigma 11"), "{text}");
    assert!(!text.contains("kappa"), "{text}");
    assert!(!text.contains("alpha"), "{text}");
}

#[test]
fn verify_passes_for_builtin_and_cubic_inputs() {
    let out = run(&["verify", "--builtin", "hamming8"]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("summary:"), "{text}");
    assert!(!text.contains("\nFAIL"), "{text}");

    // the constants output is a valid verify input describing the same loop
    let constants = run(&["constants", "--builtin", "zero_1"]);
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("z1.cubic");
    std::fs::write(&path, stdout_of(&constants)).unwrap();
    let out = run(&["verify", "--cubic", path.to_str().unwrap()]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    // no code on hand, so no code-level suites
    assert!(!stdout_of(&out).contains("code.doubly-even"));
}

#[test]
fn verify_jsonl_reports_parse_and_agree() {
    let out = run(&[
        "verify",
        "--builtin",
        "zero_1",
        "--format",
        "jsonl",
        "--samples",
        "100",
    ]);
    assert_eq!(code_of(&out), 0);
    let text = stdout_of(&out);
    let mut saw_summary = false;
    for line in text.lines() {
        let v: serde_json::Value = serde_json::from_str(line).expect("JSON line");
        if v.get("summary").is_some() {
            saw_summary = true;
            assert_eq!(v["summary"]["failed"], 0);
        } else {
            assert_eq!(v["failures"], 0, "{line}");
        }
    }
    assert!(saw_summary);
}

#[test]
fn export_table_round_trips_and_respects_capacity() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("sub3.tbl");
    let out = run(&[
        "export-table",
        "--builtin",
        "hamming8_sub3",
        "--out",
        path.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 0, "{}", stderr_of(&out));
    let text = stdout_of(&out);
    assert!(text.contains("order 16"), "{text}");

    let table = CayleyTable::parse(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert_eq!(table.order(), 16);
    // row of the unit element is the identity permutation (zero-based ranks)
    for j in 0..16 {
        assert_eq!(table.entry(0, j), j);
    }

    // the order-8192 table needs the explicit override
    let big = dir.path().join("golay.tbl");
    let out = run(&[
        "export-table",
        "--builtin",
        "golay24",
        "--out",
        big.to_str().unwrap(),
    ]);
    assert_eq!(code_of(&out), 1);
    assert!(stderr_of(&out).contains("capacity"), "{}", stderr_of(&out));
    assert!(!big.exists());
}
