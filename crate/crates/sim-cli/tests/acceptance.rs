//! Acceptance run: one PASS/FAIL line per criterion, non-zero exit if any fails.

use lpd_sim_cli::{run_checks, CHECKS};
use std::process::ExitCode;

fn main() -> ExitCode {
    // `cargo test` passes harness flags such as `--nocapture`; a bare filter selects criteria
    let ids: Vec<u32> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let outcomes = match run_checks(&ids) {
        Ok(o) => o,
        Err(e) => {
            eprintln!("acceptance: {e}");
            return ExitCode::FAILURE;
        }
    };
    for o in &outcomes {
        let tag = if o.passed { "PASS" } else { "FAIL" };
        println!("{tag} [{:>2}] {} ({:.2} s): {}", o.id, o.name, o.seconds, o.detail);
    }
    let passed = outcomes.iter().filter(|o| o.passed).count();
    println!("{passed}/{} criteria passed (of {} defined)", outcomes.len(), CHECKS.len());
    if passed == outcomes.len() {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
