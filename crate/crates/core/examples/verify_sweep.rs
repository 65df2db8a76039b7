// Usage: cargo run --release --example verify_sweep -- [max_n]

use runorder::verify::{run_verification, Outcome, VerifyOptions};

fn main() {
    let max_n = std::env::args().nth(1).map(|a| a.parse().expect("integer")).unwrap_or(14);
    let report = run_verification(VerifyOptions::new(max_n)).expect("sweep runs");
    let checks: usize = report
        .configs
        .iter()
        .map(|c| match &c.outcome {
            Outcome::Pass { checks } | Outcome::Fail { checks, .. } => *checks,
            Outcome::Skipped { .. } => 0,
        })
        .sum();
    for failure in report.failures() {
        println!("{failure}");
    }
    println!("{} configs, {checks} exact comparisons, passed: {}", report.configs.len(), report.passed());
}
