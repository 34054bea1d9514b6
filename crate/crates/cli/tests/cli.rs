use std::path::Path;
use std::process::{Command, Output};

use serde_json::Value;

fn qsl_shor(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_qsl-shor"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn code(out: &Output) -> i32 {
    out.status.code().expect("exit code")
}

fn stderr(out: &Output) -> String {
    String::from_utf8_lossy(&out.stderr).into_owned()
}

fn path(p: &Path) -> &str {
    p.to_str().unwrap()
}

#[test]
fn run_writes_histogram_and_echoes_seed_and_sso() {
    let out = qsl_shor(&["run", "-a", "7", "--shots", "20000", "--seed", "42"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let h: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(h["a"], 7);
    assert_eq!(h["N"], 15);
    assert_eq!(h["shots"], 20000);
    assert_eq!(h["seed"], 42);
    let err = stderr(&out);
    assert!(err.contains("seed: 42"), "{err}");
    assert!(err.contains("SSO = 0.9"), "{err}");
}

#[test]
fn run_without_seed_echoes_one_that_reproduces() {
    let dir = tempfile::tempdir().unwrap();
    let first = dir.path().join("first.csv");
    let out = qsl_shor(&["run", "-a", "13", "--shots", "5000", "--format", "csv", "--out", path(&first)]);
    assert_eq!(code(&out), 0);
    let err = stderr(&out);
    let seed = err
        .lines()
        .find_map(|l| l.strip_prefix("seed: "))
        .expect("seed echoed")
        .trim()
        .to_string();
    let again = dir.path().join("again.csv");
    let out = qsl_shor(&[
        "run", "-a", "13", "--shots", "5000", "--format", "csv", "--seed", &seed, "--out", path(&again),
    ]);
    assert_eq!(code(&out), 0);
    assert_eq!(std::fs::read(&first).unwrap(), std::fs::read(&again).unwrap());
}

#[test]
fn reruns_are_byte_identical_across_thread_counts_and_executors() {
    let dir = tempfile::tempdir().unwrap();
    let mut files = Vec::new();
    for (i, extra) in [
        vec!["--threads", "1"],
        vec!["--threads", "4"],
        vec!["--executor", "scalar"],
    ]
    .into_iter()
    .enumerate()
    {
        let f = dir.path().join(format!("{i}.json"));
        let mut args = vec!["run", "-a", "8", "--shots", "100000", "--seed", "9", "--out", path(&f)];
        args.extend(extra);
        assert_eq!(code(&qsl_shor(&args)), 0);
        files.push(std::fs::read(&f).unwrap());
    }
    assert_eq!(files[0], files[1]);
    assert_eq!(files[0], files[2]);
}

#[test]
fn run_a4_support() {
    let out = qsl_shor(&["run", "-a", "4", "--shots", "1000", "--seed", "1"]);
    let h: Value = serde_json::from_slice(&out.stdout).unwrap();
    for key in h["counts"].as_object().unwrap().keys() {
        assert!(key == "0" || key == "128", "{key}");
    }
}

#[test]
fn invalid_base_exits_2() {
    let out = qsl_shor(&["run", "-a", "3"]);
    assert_eq!(code(&out), 2);
    let err = stderr(&out);
    assert!(err.contains("gcd(3,15)=3: not a valid subroutine base"), "{err}");
    assert!(err.contains("2, 4, 7, 8, 11, 13"), "{err}");
    assert_eq!(code(&qsl_shor(&["run", "-a", "7", "--shots", "0"])), 2);
    assert_eq!(code(&qsl_shor(&["frobnicate"])), 2);
    assert_eq!(code(&qsl_shor(&["oracle", "-a", "1"])), 2);
}

#[test]
fn sso_reads_both_formats() {
    let dir = tempfile::tempdir().unwrap();
    for format in ["json", "csv"] {
        let f = dir.path().join(format!("h.{format}"));
        let run = qsl_shor(&[
            "run", "-a", "11", "--shots", "50000", "--seed", "5", "--format", format, "--out", path(&f),
        ]);
        assert_eq!(code(&run), 0);
        let out = qsl_shor(&["sso", path(&f)]);
        assert_eq!(code(&out), 0, "{}", stderr(&out));
        let line = String::from_utf8(out.stdout).unwrap();
        assert!(line.starts_with("a=11"), "{line}");
        let value: f64 = line.split_whitespace().nth(3).unwrap().parse().unwrap();
        assert!(value >= 0.999, "{line}");
    }
}

#[test]
fn malformed_or_empty_histograms_exit_3() {
    let dir = tempfile::tempdir().unwrap();
    let cases = [
        ("garbage.json", "{ not json"),
        ("missing.json", "{}"),
        (
            "empty.json",
            r#"{"N":15,"a":7,"shots":0,"n_input_bits":8,"seed":1,"bit_order":"msb-first-by-power","counts":{}}"#,
        ),
        (
            "short.json",
            r#"{"N":15,"a":7,"shots":5,"n_input_bits":8,"seed":1,"bit_order":"msb-first-by-power","counts":{"0":3}}"#,
        ),
        ("garbage.csv", "m,phase,count,frequency\nx,y,z,w\n"),
    ];
    for (name, body) in cases {
        let f = dir.path().join(name);
        std::fs::write(&f, body).unwrap();
        let out = qsl_shor(&["sso", path(&f)]);
        assert_eq!(code(&out), 3, "{name}: {}", stderr(&out));
    }
    assert_eq!(code(&qsl_shor(&["sso", path(&dir.path().join("absent.json"))])), 3);
}

#[test]
fn sso_all_prints_six_bases_in_order() {
    let out = qsl_shor(&["sso", "--all", "--shots", "20000", "--seed", "3"]);
    assert_eq!(code(&out), 0);
    let text = String::from_utf8(out.stdout).unwrap();
    let bases: Vec<&str> = text
        .lines()
        .map(|l| l.split_whitespace().next().unwrap())
        .collect();
    assert_eq!(bases, ["a=2", "a=4", "a=7", "a=8", "a=11", "a=13"]);
    assert!(text.lines().all(|l| l.contains('±')));
}

#[test]
fn oracle_prints_distributions() {
    let out = qsl_shor(&["oracle", "-a", "7"]);
    assert_eq!(code(&out), 0);
    let d: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(d["a"], 7);
    let probs = d["probs"].as_object().unwrap();
    assert_eq!(probs.len(), 4);
    assert_eq!(probs["64"].as_f64().unwrap(), 0.25);

    let all: Value = serde_json::from_slice(&qsl_shor(&["oracle"]).stdout).unwrap();
    let bases: Vec<u64> = all.as_array().unwrap().iter().map(|d| d["a"].as_u64().unwrap()).collect();
    assert_eq!(bases, [2, 4, 7, 8, 11, 13]);
}

#[test]
fn factor_reports_three_and_five() {
    let out = qsl_shor(&["factor", "--seed", "7"]);
    assert_eq!(code(&out), 0);
    let r: Value = serde_json::from_slice(&out.stdout).unwrap();
    assert_eq!(r["factors"], serde_json::json!([3, 5]));
    for key in ["N", "a", "m", "r", "factors", "invocations", "seed"] {
        assert!(r.get(key).is_some(), "missing {key}");
    }
    assert!(stderr(&out).contains("seed: 7"));
    assert_eq!(out.stdout, qsl_shor(&["factor", "--seed", "7"]).stdout);
}

#[test]
fn factor_with_no_budget_exits_4_when_subroutine_needed() {
    let mut exhausted = 0;
    for seed in 0..20 {
        let s = seed.to_string();
        let out = qsl_shor(&["factor", "--seed", &s, "--max-retries", "0"]);
        let r: Value = serde_json::from_slice(&out.stdout).unwrap();
        assert_eq!(r["invocations"], 0);
        match code(&out) {
            0 => assert_eq!(r["factors"], serde_json::json!([3, 5])),
            4 => {
                exhausted += 1;
                assert_eq!(r["factors"], serde_json::json!([]));
            }
            other => panic!("seed {seed}: exit {other}"),
        }
    }
    assert!(exhausted > 0);
}

#[test]
fn factor_rejects_other_moduli() {
    let out = qsl_shor(&["factor", "-N", "21", "--seed", "0"]);
    assert_eq!(code(&out), 2);
    assert!(stderr(&out).contains("only N = 15"));
}

#[test]
fn selftest_passes_and_counts_cases() {
    let out = qsl_shor(&["selftest"]);
    assert_eq!(code(&out), 0, "{}", stderr(&out));
    let text = String::from_utf8(out.stdout).unwrap();
    assert!(!text.contains("FAIL"), "{text}");
    let n: u64 = text
        .lines()
        .find_map(|l| l.strip_prefix("multiplier cases: "))
        .unwrap()
        .parse()
        .unwrap();
    assert!(n >= 192);
}
