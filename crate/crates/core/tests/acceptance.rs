//! One pass/fail line per acceptance criterion; exits nonzero if any fails.
//! Runs without the libtest harness so the lines are never captured.

use std::process::ExitCode;

use cliquefactor::acceptance::{run_criterion, CRITERIA};

fn main() -> ExitCode {
    let mut failed = Vec::new();
    for id in 1..=CRITERIA {
        let res = run_criterion(id);
        println!("{res}");
        if !res.passed {
            failed.push(id);
        }
    }
    if failed.is_empty() {
        println!("acceptance: {CRITERIA}/{CRITERIA} passed");
        ExitCode::SUCCESS
    } else {
        println!("acceptance: failing criteria {failed:?}");
        ExitCode::FAILURE
    }
}
