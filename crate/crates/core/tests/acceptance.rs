//! One pass/fail line per acceptance criterion. The growth-rate criteria
//! sweep odd r = 101..501 and take several minutes in an optimized build.
//! Runs without the libtest harness so the lines are always printed.

use std::process::ExitCode;

use qhyp::acceptance::{run_all, Config};

fn main() -> ExitCode {
    println!("\nrunning acceptance criteria");
    let outcomes = run_all(None, &Config::default(), |o| println!("{o}"));
    let failed: Vec<u8> = outcomes.iter().filter(|o| !o.passed).map(|o| o.id).collect();
    println!("{} of {} criteria passed", outcomes.len() - failed.len(), outcomes.len());
    if failed.is_empty() {
        ExitCode::SUCCESS
    } else {
        println!("failed criteria: {failed:?}");
        ExitCode::FAILURE
    }
}
