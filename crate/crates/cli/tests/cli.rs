//! End-to-end behaviour of the `ancrc` binary: exit codes, report formats,
//! determinism and the table commands.

use serde_json::Value;
use std::process::{Command, Output};

fn ancrc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_ancrc")).args(args).output().expect("binary runs")
}

fn code(o: &Output) -> i32 {
    o.status.code().expect("exit code")
}

fn json(o: &Output) -> Value {
    serde_json::from_slice(&o.stdout).expect("valid json")
}

fn strip_wall_time(mut v: Value) -> Value {
    v["summary"].as_object_mut().unwrap().remove("wall_time");
    v
}

#[test]
fn passing_suite_exits_zero() {
    let o = ancrc(&["verify", "--suite", "gamma", "--samples", "5"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let v = json(&o);
    let s = &v["summary"];
    assert_eq!(s["total"], s["passed"]);
    assert!(s["wall_time"].as_f64().unwrap() >= 0.0);
}

#[test]
fn failing_case_exits_one() {
    let o = ancrc(&["verify", "--suite", "gamma", "--samples", "3", "--tol-gamma", "1e-300"]);
    assert_eq!(code(&o), 1);
    let v = json(&o);
    assert!(v["cases"].as_array().unwrap().iter().any(|c| c["pass"] == false));
    assert!(v["cases"].as_array().unwrap().iter().all(|c| c["tolerance"] == 1e-300));
}

#[test]
fn configuration_errors_exit_two() {
    assert_eq!(code(&ancrc(&["verify", "--suite", "nonsense"])), 2);
    assert_eq!(code(&ancrc(&["verify", "--n", "0..2"])), 2);
    assert_eq!(code(&ancrc(&["verify", "--n", "3..1"])), 2);
    assert_eq!(code(&ancrc(&["verify", "--samples", "0", "--suite", "gamma"])), 2);
    assert_eq!(code(&ancrc(&["verify", "--format", "xml"])), 2);
    assert_eq!(code(&ancrc(&["table", "u-matrix", "--z", "1+2j"])), 2);
    assert_eq!(code(&ancrc(&["table", "u-matrix", "--n", "0"])), 2);
    assert_eq!(code(&ancrc(&["table", "monodromy", "--n", "2"])), 2);
    assert_eq!(code(&ancrc(&["table", "correlators", "--side", "x", "--n", "2", "--x", "0.1,0.2"])), 2);
    assert_eq!(code(&ancrc(&["frobnicate"])), 2);
}

#[test]
fn mirror_case_count() {
    let o = ancrc(&["verify", "--suite", "mirror", "--n", "1..3", "--samples", "10", "--seed", "7"]);
    let v = json(&o);
    let cases = v["cases"].as_array().unwrap();
    assert!(cases.len() >= 30, "only {} cases", cases.len());
    assert_eq!(v["summary"]["total"].as_u64().unwrap() as usize, cases.len());
    for c in cases {
        assert_eq!(c["suite"], "mirror");
        for key in ["case_id", "n", "params", "max_abs_err", "tolerance", "pass"] {
            assert!(c.get(key).is_some(), "missing {key}");
        }
    }
}

#[test]
fn same_seed_same_report() {
    let args = ["verify", "--suite", "mirror,periods", "--n", "1..2", "--samples", "4", "--seed", "11"];
    let a = ancrc(&args);
    let b = ancrc(&args);
    assert_eq!(strip_wall_time(json(&a)), strip_wall_time(json(&b)));
    let text = |o: &Output| {
        String::from_utf8(o.stdout.clone())
            .unwrap()
            .lines()
            .filter(|l| !l.contains("\"wall_time\""))
            .collect::<Vec<_>>()
            .join("\n")
    };
    assert_eq!(text(&a), text(&b));
    let c = ancrc(&["verify", "--suite", "mirror,periods", "--n", "1..2", "--samples", "4", "--seed", "12"]);
    assert_ne!(strip_wall_time(json(&a)), strip_wall_time(json(&c)));
}

#[test]
fn complex_params_are_pairs() {
    let o = ancrc(&["verify", "--suite", "periods", "--n", "1", "--samples", "1"]);
    let v = json(&o);
    let c = &v["cases"][0];
    let z = &c["params"]["z"];
    assert_eq!(z.as_array().map(Vec::len), Some(2), "{c}");
}

#[test]
fn csv_and_text_formats() {
    let o = ancrc(&["verify", "--suite", "gamma", "--samples", "2", "--format", "csv"]);
    assert_eq!(code(&o), 0);
    let out = String::from_utf8(o.stdout).unwrap();
    let mut rows = csv_rows(&out);
    assert_eq!(rows.remove(0)[..7], ["suite", "case_id", "n", "params", "max_abs_err", "tolerance", "pass"]);
    assert!(rows.iter().all(|r| r[0] == "gamma" && r[6] == "true"));

    let o = ancrc(&["verify", "--suite", "gamma", "--samples", "2", "--format", "text"]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.lines().take_while(|l| !l.contains(" of ")).all(|l| l.starts_with("PASS ")));
}

fn csv_rows(s: &str) -> Vec<Vec<String>> {
    // the params column is quoted JSON; split on commas outside quotes
    s.lines()
        .map(|l| {
            let (mut cells, mut cur, mut quoted) = (Vec::new(), String::new(), false);
            for ch in l.chars() {
                match ch {
                    '"' => quoted = !quoted,
                    ',' if !quoted => cells.push(std::mem::take(&mut cur)),
                    _ => cur.push(ch),
                }
            }
            cells.push(cur);
            cells
        })
        .collect()
}

#[test]
fn out_writes_a_file() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("report.json");
    let o = ancrc(&["verify", "--suite", "gamma", "--samples", "2", "--out", path.to_str().unwrap()]);
    assert_eq!(code(&o), 0);
    assert!(o.stdout.is_empty());
    let v: Value = serde_json::from_str(&std::fs::read_to_string(&path).unwrap()).unwrap();
    assert!(v["summary"]["total"].as_u64().unwrap() > 0);
    let bad = dir.path().join("missing").join("report.json");
    assert_eq!(code(&ancrc(&["verify", "--suite", "gamma", "--samples", "1", "--out", bad.to_str().unwrap()])), 2);
}

#[test]
fn u_matrix_table() {
    let o = ancrc(&["table", "u-matrix", "--n", "1", "--z", "1.3-0.4i"]);
    assert_eq!(code(&o), 0, "{}", String::from_utf8_lossy(&o.stderr));
    let out = String::from_utf8(o.stdout).unwrap();
    assert!(out.starts_with("U(z), n = 1"));
    // two rows of two complex entries
    let rows: Vec<_> = out.lines().filter(|l| l.starts_with('P')).collect();
    assert_eq!(rows.len(), 2);
    assert!(rows.iter().all(|r| r.matches('i').count() == 2));

    let o = ancrc(&["table", "u-matrix", "--n", "1", "--z", "1.3-0.4i", "--format", "json"]);
    let v = json(&o);
    assert_eq!(v[0]["entries"].as_array().unwrap().len(), 2);
}

#[test]
fn effective_oz_last_row_is_a_delta() {
    for d in 1..=4usize {
        let o = ancrc(&["table", "oz", "--n", "2", "--leg", "effective", "--d", &d.to_string(), "--format", "json"]);
        assert_eq!(code(&o), 0);
        let v = json(&o);
        let last = v[0]["entries"].as_array().unwrap().last().unwrap().as_array().unwrap().clone();
        // column k = -d mod 3, with k = 0 stored last
        let k = (3 - d % 3) % 3;
        let hot = if k == 0 { 2 } else { k - 1 };
        for (k, e) in last.iter().enumerate() {
            let (re, im) = (e[0].as_f64().unwrap(), e[1].as_f64().unwrap());
            let want = if k == hot { 1.0 } else { 0.0 };
            assert!((re - want).abs() < 1e-10 && im.abs() < 1e-10, "d = {d}, k = {k}: {re} {im}");
        }
    }
}

#[test]
fn other_tables_render() {
    for args in [
        vec!["table", "correlators", "--side", "y", "--n", "2"],
        vec!["table", "correlators", "--side", "x", "--n", "1", "--format", "csv"],
        vec!["table", "correlators", "--side", "x", "--n", "2", "--x", "0.1,0.05-0.02i,0"],
        vec!["table", "correlators", "--side", "y", "--n", "1", "--t", "-0.8+0.1i,0.2"],
        vec!["table", "a-matrices", "--n", "2"],
        vec!["table", "oz", "--n", "1", "--d", "3"],
        vec!["table", "monodromy", "--n", "1", "--format", "json"],
    ] {
        let o = ancrc(&args);
        assert_eq!(code(&o), 0, "{args:?}: {}", String::from_utf8_lossy(&o.stderr));
        assert!(!o.stdout.is_empty());
    }
    let o = ancrc(&["table", "correlators", "--side", "y", "--n", "2"]);
    let out = String::from_utf8(o.stdout).unwrap();
    assert_eq!(out.matches("<gamma").count(), 3);
}
