//! The thirteen acceptance criteria on the default configuration
//! (all suites, n = 1..4, 20 samples, seed 0). One PASS/FAIL line per
//! criterion goes straight to stderr, so it shows under output capture too.

use ancrc_core::verify::{self, Report, RunConfig};
use ancrc_verification::score_all;
use std::io::Write;
use std::time::{Duration, Instant};

const TIME_LIMIT: Duration = Duration::from_secs(300);

// the JSON the binary prints, minus the wall time
fn report_json(r: &Report) -> String {
    let mut v = serde_json::to_value(r).expect("report serializes");
    v["summary"].as_object_mut().expect("summary object").remove("wall_time");
    serde_json::to_string_pretty(&v).expect("json")
}

#[test]
fn acceptance() {
    let cfg = RunConfig::default();
    let start = Instant::now();
    let first = verify::run(&cfg).expect("default configuration is valid");
    let elapsed = start.elapsed();
    let second = verify::run(&cfg).expect("default configuration is valid");

    let scores = score_all(&first);
    let mut lines: Vec<String> = scores.iter().map(|s| s.line()).collect();
    let mut red: Vec<usize> = scores.iter().filter(|s| !s.pass()).map(|s| s.id).collect();

    let same = report_json(&first) == report_json(&second);
    let fast = elapsed < TIME_LIMIT;
    lines.push(format!(
        "{} 13. reproducibility: identical reports {same}, verify --suite all in {:.1} s (limit {} s)",
        if same && fast { "PASS" } else { "FAIL" },
        elapsed.as_secs_f64(),
        TIME_LIMIT.as_secs()
    ));
    if !(same && fast) {
        red.push(13);
    }

    let mut err = std::io::stderr().lock();
    writeln!(err, "\nacceptance criteria").unwrap();
    for l in &lines {
        writeln!(err, "  {l}").unwrap();
    }
    writeln!(err).unwrap();
    assert!(red.is_empty(), "criteria not met: {red:?}");
}
