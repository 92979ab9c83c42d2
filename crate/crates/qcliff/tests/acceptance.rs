//! One line per acceptance criterion: the suite behind it, pass or fail, and
//! the elapsed time against its limit. A criterion passes when every hard
//! property of its suite holds within the limit. Runs without the test
//! harness so the lines are always shown.

use std::process::ExitCode;
use std::time::Instant;

use qcliff::suites::{run, SuiteOptions};

const CRITERIA: [(u8, &str, f64); 9] = [
    (1, "algebra-laws", 10.0),
    (2, "chevalley", 5.0),
    (3, "grading", 5.0),
    (4, "idempotents", 10.0),
    (5, "fierz", 20.0),
    (6, "representations", 10.0),
    (7, "classifier", 20.0),
    (8, "duality", 60.0),
    (9, "appendix-diff", 30.0),
];

fn main() -> ExitCode {
    let opts = SuiteOptions { seed: 42, ..SuiteOptions::default() };
    let mut failed = Vec::new();
    for (n, suite, limit) in CRITERIA {
        let start = Instant::now();
        let report = run(suite, &opts).expect("known suite");
        let secs = start.elapsed().as_secs_f64();
        let ok = report.passed && secs <= limit;
        println!(
            "criterion {n} {suite:<16} {} {secs:7.2} s (limit {limit:.0} s)",
            if ok { "PASS" } else { "FAIL" }
        );
        for p in report.properties.iter().filter(|p| !p.passed) {
            let kind = if p.informational { "note" } else { "failed" };
            println!("    {kind}: {} {}", p.name, p.detail.as_deref().unwrap_or(""));
        }
        if !ok {
            failed.push(n);
        }
    }
    if failed.is_empty() {
        println!("acceptance: all 9 criteria pass");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: criteria failed: {failed:?}");
        ExitCode::FAILURE
    }
}
