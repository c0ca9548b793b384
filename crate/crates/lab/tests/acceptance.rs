//! Acceptance suite: one pass/fail line per criterion.
//!
//! Tolerances are pinned in `graded_image_lab::acceptance`: zero failures per
//! criterion (every comparison is exact) and a wall-clock budget per criterion.

use std::process::ExitCode;
use std::time::{Duration, Instant};

use graded_image_lab::acceptance::{run, Options, CRITERIA, TIME_BUDGET_SECS};

fn main() -> ExitCode {
    let opts = Options::default();
    let mut all = true;
    println!("acceptance suite, seed {}", opts.seed);
    for id in 1..=CRITERIA.len() {
        let start = Instant::now();
        let outcome = run(id, &opts);
        let elapsed = start.elapsed();
        let budget = Duration::from_secs(TIME_BUDGET_SECS[id - 1]);
        let in_time = elapsed <= budget;
        all &= outcome.passed() && in_time;
        println!("{} [{:.1}s of {}s]", outcome.summary(), elapsed.as_secs_f64(), budget.as_secs());
        if !in_time {
            println!("   criterion {id} exceeded its time budget");
        }
        for f in outcome.failures.iter().skip(1).take(4) {
            println!("   also: {f}");
        }
    }
    println!("acceptance: {}", if all { "all criteria passed" } else { "FAILED" });
    if all {
        ExitCode::SUCCESS
    } else {
        ExitCode::FAILURE
    }
}
