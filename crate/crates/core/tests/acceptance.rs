//! Acceptance criteria. Prints one line per criterion and exits nonzero on
//! any unexpected failure.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use preproj::suites::{run_suite, SuiteReport};

const SEED: u64 = 0x5eed;

/// Checks of the worked Π(A3) example that fail for every reading of the
/// arrow conventions: the collection S' violates the Hom axioms, so the
/// statements about x relative to S' cannot hold either.
const KNOWN_EX_6_13_FAILURES: &[&str] = &[
    "S' passes the smc Hom axioms",
    "Hom(x, S'[i]) = 0 for i < 0",
    "smc window of x relative to S' is [0,0]",
];

struct Criterion {
    number: usize,
    suite: &'static str,
    limit: Duration,
    known_failures: &'static [&'static str],
}

const fn c(number: usize, suite: &'static str, secs: u64) -> Criterion {
    Criterion { number, suite, limit: Duration::from_secs(secs), known_failures: &[] }
}

fn criteria() -> Vec<Criterion> {
    vec![
        c(1, "restrict-d5", 1),
        c(2, "arrangements", 1),
        c(3, "roots", 1),
        Criterion { known_failures: KNOWN_EX_6_13_FAILURES, ..c(4, "ex-6-13", 30) },
        c(5, "bricks", 300),
        c(6, "magic", 120),
        c(7, "mutation", 300),
        c(8, "heart", 300),
        c(9, "completion", 120),
    ]
}

fn main() -> ExitCode {
    let mut unexpected = 0;
    for cr in criteria() {
        let start = Instant::now();
        let result = run_suite(cr.suite, SEED);
        let elapsed = start.elapsed();
        let in_time = elapsed <= cr.limit;
        let (status, ok, detail) = match result {
            Err(e) => ("FAIL", false, format!("error: {e}")),
            Ok(report) => classify(&report, cr.known_failures),
        };
        let ok = ok && in_time;
        let status = if in_time { status } else { "FAIL" };
        println!(
            "criterion {}: {status} ({}, {:.2?} of {:?}){}",
            cr.number,
            cr.suite,
            elapsed,
            cr.limit,
            if detail.is_empty() { String::new() } else { format!(" {detail}") }
        );
        if !ok {
            unexpected += 1;
        }
    }
    if unexpected == 0 {
        println!("acceptance: no unexpected failures");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: {unexpected} criteria failed unexpectedly");
        ExitCode::FAILURE
    }
}

/// Returns the printed status, whether the outcome is expected, and detail.
fn classify(report: &SuiteReport, known: &[&str]) -> (&'static str, bool, String) {
    let failed = report.failed_checks();
    for c in report.checks.iter().filter(|c| !c.passed) {
        println!("    failed check: {} | {}", c.name, c.detail);
    }
    if failed.is_empty() {
        return ("PASS", known.is_empty(), if known.is_empty() { String::new() } else { "known failures did not occur".into() });
    }
    if failed.len() == known.len() && failed.iter().all(|f| known.contains(f)) {
        return ("FAIL", true, "(known: example collection violates the Hom axioms)".into());
    }
    ("FAIL", false, format!("failed: {}", failed.join("; ")))
}
