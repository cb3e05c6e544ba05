//! Runs every acceptance criterion and prints one PASS/FAIL line each.

use std::process::ExitCode;

use outerspace::suite::{format_line, run_suite};

fn main() -> ExitCode {
    let results = match run_suite(&[]) {
        Ok(r) => r,
        Err(e) => {
            eprintln!("acceptance suite could not run: {e}");
            return ExitCode::FAILURE;
        }
    };
    for r in &results {
        println!("{}", format_line(r));
    }
    let failed = results.iter().filter(|r| !r.passed).count();
    println!("{} passed, {} failed", results.len() - failed, failed);
    if failed == 0 { ExitCode::SUCCESS } else { ExitCode::FAILURE }
}
