use std::process::Command;
use std::time::{Duration, Instant};

use serde_json::Value;

const SUITE_LIMIT: Duration = Duration::from_secs(600);

fn run_suite() -> (i32, Vec<u8>, Duration) {
    let start = Instant::now();
    let out = Command::new(env!("CARGO_BIN_EXE_toric-ell"))
        .args(["suite", "--format", "structured"])
        .output()
        .expect("spawn toric-ell");
    (out.status.code().unwrap_or(-1), out.stdout, start.elapsed())
}

#[test]
fn acceptance() {
    let (code1, out1, t1) = run_suite();
    let (code2, out2, t2) = run_suite();

    let report: Value = serde_json::from_slice(&out1).expect("suite output is JSON");
    let criteria = report["result"]["criteria"].as_array().expect("criteria array");
    let mut failures = Vec::new();
    for c in criteria {
        let id = c["id"].as_u64().unwrap_or(0);
        let passed = c["passed"].as_bool().unwrap_or(false);
        println!(
            "{} [{}] {}: {}",
            if passed { "PASS" } else { "FAIL" },
            id,
            c["title"].as_str().unwrap_or(""),
            c["detail"].as_str().unwrap_or("")
        );
        if !passed {
            failures.push(id);
        }
    }
    if criteria.len() != 9 {
        failures.push(0);
    }

    let identical = out1 == out2;
    let slowest = t1.max(t2);
    let passed10 = code1 == 0 && code2 == 0 && identical && slowest < SUITE_LIMIT;
    println!(
        "{} [10] end-to-end determinism: exit codes {}/{}, byte-identical {}, slowest run {:.1}s (limit {}s)",
        if passed10 { "PASS" } else { "FAIL" },
        code1,
        code2,
        identical,
        slowest.as_secs_f64(),
        SUITE_LIMIT.as_secs()
    );
    if !passed10 {
        failures.push(10);
    }
    assert!(failures.is_empty(), "failed criteria: {:?}", failures);
}
