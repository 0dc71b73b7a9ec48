use std::io::Write;
use std::process::{Command, Output};

use serde_json::Value;

fn sincint(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_sincint"))
        .args(args)
        .env_remove("SINCINT_TOL")
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn stderr(out: &Output) -> String {
    String::from_utf8(out.stderr.clone()).unwrap()
}

fn json_lines(out: &Output) -> Vec<Value> {
    stdout(out)
        .lines()
        .map(|l| serde_json::from_str(l).expect("each line is a JSON object"))
        .collect()
}

fn batch_file(contents: &str) -> tempfile::NamedTempFile {
    let mut f = tempfile::NamedTempFile::new().unwrap();
    f.write_all(contents.as_bytes()).unwrap();
    f
}

fn case(a: &str, b: &str, c: &str, p: &str, q: &str) -> Vec<String> {
    ["-a", a, "-b", b, "-c", c, "-p", p, "-q", q].iter().map(|s| s.to_string()).collect()
}

fn run(sub: &str, rest: Vec<String>, extra: &[&str]) -> Output {
    let mut args = vec![sub.to_string()];
    args.extend(rest);
    args.extend(extra.iter().map(|s| s.to_string()));
    let refs: Vec<&str> = args.iter().map(String::as_str).collect();
    sincint(&refs)
}

#[test]
fn eval_same_parity() {
    let out = run("eval", case("3", "3", "0", "1", "0"), &[]);
    assert_eq!(out.status.code(), Some(0));
    let text = stdout(&out);
    assert!(text.starts_with("3/8*pi = 1.17809724509"), "{text}");
}

#[test]
fn eval_opposite_parity_json() {
    let out = run("eval", case("3", "2", "0", "1", "0"), &["--format", "json"]);
    assert_eq!(out.status.code(), Some(0));
    let rec = &json_lines(&out)[0];
    assert_eq!(rec["exact"], "3/4*ln(3)");
    assert_eq!(rec["a"], 3);
    assert_eq!(rec["q"], 0);
    assert!((rec["decimal"].as_f64().unwrap() - 0.75 * 3f64.ln()).abs() < 1e-15);
}

#[test]
fn eval_negative_frequency() {
    let out = run("eval", case("3", "2", "0", "-1", "0"), &[]);
    assert!(stdout(&out).starts_with("-3/4*ln(3) = "));
}

#[test]
fn eval_domain_error_names_constraint() {
    let out = run("eval", case("2", "3", "0", "1", "0"), &[]);
    assert_eq!(out.status.code(), Some(2));
    assert!(stderr(&out).contains("a >= b"), "{}", stderr(&out));
    assert!(stdout(&out).is_empty());
}

#[test]
fn b1_needs_flag() {
    let out = run("eval", case("1", "1", "0", "1", "0"), &[]);
    assert_eq!(out.status.code(), Some(2));
    let out = run("eval", case("1", "1", "0", "1", "0"), &["--allow-b1"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).starts_with("1/2*pi"));
}

#[test]
fn malformed_flags_are_usage_errors() {
    assert_eq!(sincint(&["eval", "-a", "x", "-b", "2", "-p", "1"]).status.code(), Some(1));
    assert_eq!(sincint(&["eval", "-b", "2", "-p", "1"]).status.code(), Some(1));
    assert_eq!(sincint(&["frobnicate"]).status.code(), Some(1));
    assert_eq!(sincint(&["--help"]).status.code(), Some(0));
}

#[test]
fn verify_examples_pass() {
    for (args, extra) in [
        (case("4", "4", "0", "1", "0"), vec!["--tol", "1e-6"]),
        (case("6", "3", "1", "1", "2"), vec!["--tol", "1e-6"]),
        (case("2", "2", "0", "0", "0"), vec![]),
    ] {
        let out = run("verify", args, &extra);
        assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
        let report = &json_lines(&out)[0];
        assert_eq!(report["pass"], true);
        assert!(report["abs_diff"].as_f64().unwrap() <= 1e-6);
    }
    let zero = &json_lines(&run("verify", case("2", "2", "0", "0", "0"), &[]))[0];
    assert_eq!(zero["exact"], "0");
    assert_eq!(zero["exact_decimal"], 0.0);
    assert_eq!(zero["oracle"], 0.0);
}

#[test]
fn verify_json_schema() {
    let out = run("verify", case("4", "4", "0", "1", "0"), &[]);
    let report = &json_lines(&out)[0];
    let keys: Vec<&str> = report.as_object().unwrap().keys().map(String::as_str).collect();
    for key in ["a", "b", "c", "p", "q", "exact", "exact_decimal", "oracle", "error_bound", "abs_diff", "tol", "pass"] {
        assert!(keys.contains(&key), "missing {key} in {keys:?}");
    }
    assert_eq!(report["exact"], "1/3*pi");
    assert_eq!(report["tol"], 1e-6);
}

#[test]
fn tolerance_from_environment() {
    let out = Command::new(env!("CARGO_BIN_EXE_sincint"))
        .args(["verify", "-a", "2", "-b", "2", "-p", "1"])
        .env("SINCINT_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(json_lines(&out)[0]["tol"], 1e-7);
    let out = Command::new(env!("CARGO_BIN_EXE_sincint"))
        .args(["verify", "-a", "2", "-b", "2", "-p", "1", "--tol", "1e-5"])
        .env("SINCINT_TOL", "1e-7")
        .output()
        .unwrap();
    assert_eq!(json_lines(&out)[0]["tol"], 1e-5);
}

#[test]
fn unattainable_tolerance_fails_verification() {
    let out = run("verify", case("2", "2", "0", "1", "0"), &["--tol", "1e-14"]);
    assert_eq!(out.status.code(), Some(5));
    let report = &json_lines(&out)[0];
    assert_eq!(report["pass"], false);
    assert!(report["reason"].is_string());
}

#[test]
fn batch_anchors_in_order() {
    let f = batch_file("2 2 0 1 0\n4 4 0 1 0");
    let out = sincint(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 2);
    assert_eq!(recs[0]["exact"], "1/2*pi");
    assert_eq!(recs[1]["exact"], "1/3*pi");
    assert!(recs.iter().all(|r| r["status"] == "ok"));
}

#[test]
fn batch_comment_only() {
    let f = batch_file("# comment only");
    let out = sincint(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).is_empty());
}

#[test]
fn batch_domain_error_is_partial() {
    let f = batch_file("2 2 0 1 0\n2 3 0 1 0\nnot a case\n");
    let out = sincint(&["batch", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(3));
    let recs = json_lines(&out);
    assert_eq!(recs.len(), 3);
    assert_eq!(recs[0]["status"], "ok");
    assert_eq!(recs[1]["status"], "domain_error");
    assert!(recs[1]["error"].as_str().unwrap().contains("a >= b"));
    assert_eq!(recs[1]["a"], 2);
    assert_eq!(recs[2]["status"], "parse_error");
    assert_eq!(recs[2]["line"], 3);
}

#[test]
fn batch_is_ordered_and_deterministic() {
    let mut contents = String::from("# grid\n");
    let mut expected = Vec::new();
    for a in 2..=9 {
        for b in 2..=a {
            for p in 1..=3 {
                contents.push_str(&format!("{a} {b} 2 {p} 1\n"));
                expected.push((a, b, p));
            }
        }
    }
    let f = batch_file(&contents);
    let path = f.path().to_str().unwrap();
    let first = sincint(&["batch", path]);
    let second = sincint(&["batch", path]);
    assert_eq!(first.status.code(), Some(0));
    assert_eq!(first.stdout, second.stdout);
    let recs = json_lines(&first);
    assert_eq!(recs.len(), expected.len());
    for (rec, (a, b, p)) in recs.iter().zip(expected) {
        assert_eq!((rec["a"].as_i64(), rec["b"].as_i64(), rec["p"].as_i64()), (Some(a), Some(b), Some(p)));
    }
}

#[test]
fn batch_with_verification() {
    let f = batch_file("5 3 2 2 3\n3 2 0 1 0\n");
    let out = sincint(&["batch", "--verify", f.path().to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(0));
    for rec in json_lines(&out) {
        assert_eq!(rec["pass"], true);
        assert!(rec["abs_diff"].as_f64().unwrap() < 1e-6);
    }
}

#[test]
fn batch_plain_format() {
    let f = batch_file("3 3 0 1 0\n");
    let out = sincint(&["batch", "--format", "plain", f.path().to_str().unwrap()]);
    assert!(stdout(&out).contains("3/8*pi"));
}

#[test]
fn batch_unreadable_file() {
    let dir = tempfile::tempdir().unwrap();
    let missing = dir.path().join("absent.txt");
    let out = sincint(&["batch", missing.to_str().unwrap()]);
    assert_eq!(out.status.code(), Some(1));
}

#[test]
fn selftest_small() {
    let out = sincint(&["selftest", "--max-a", "4", "--max-c", "2"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
    assert!(stdout(&out).contains("0 failures"));
}

#[test]
fn selftest_default() {
    let out = sincint(&["selftest"]);
    assert_eq!(out.status.code(), Some(0), "{}", stderr(&out));
}

#[test]
fn selftest_detects_negated_prefactor() {
    let out = sincint(&["selftest", "--max-a", "4", "--max-c", "1", "--inject-fault"]);
    assert_eq!(out.status.code(), Some(4));
    assert!(stderr(&out).contains("first failure"));
}
