//! Acceptance criteria 1-13, one pass/fail line each.
//!
//! Numeric arguments restrict the run to those criteria
//! (`cargo test --test acceptance -- 8 9`).

use std::process::ExitCode;

use ferrand_core::verify::{Config, Runner, ALL};

fn main() -> ExitCode {
    let picked: Vec<u8> = std::env::args().skip(1).filter_map(|a| a.parse().ok()).collect();
    let ids: Vec<u8> = if picked.is_empty() { ALL.to_vec() } else { picked };
    let runner = Runner::new(Config::default());
    let mut failed = 0;
    for id in ids {
        let c = runner.run(id);
        let status = if c.pass() { "PASS" } else { "FAIL" };
        println!("criterion {:>2} {status} {} ({} checks, {:.1}s)", c.id, c.title, c.rows.len(), c.seconds);
        for r in c.failures() {
            println!("    {}: computed {} expected {}", r.claim, r.computed, r.expected);
        }
        failed += !c.pass() as usize;
    }
    if failed == 0 {
        ExitCode::SUCCESS
    } else {
        println!("{failed} criteria failed");
        ExitCode::FAILURE
    }
}
