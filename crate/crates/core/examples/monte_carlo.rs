// Usage: cargo run --release --example monte_carlo -- [n1] [n2] [reps] [seed]

use runorder::oracle::sample_distribution;
use runorder::{dist, RunsConfig};

fn main() {
    let args: Vec<u64> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let n1 = args.first().copied().unwrap_or(50) as u32;
    let n2 = args.get(1).copied().unwrap_or(60) as u32;
    let reps = args.get(2).copied().unwrap_or(100_000);
    let seed = args.get(3).copied().unwrap_or(7);
    let config = RunsConfig::new(n1, n2).expect("n1, n2 >= 1");

    let report = sample_distribution(config, reps, seed).expect("reps >= 1");
    let exact = dist::moments(config);
    println!("{config}, {reps} samples, seed {seed}");
    println!("{:<12} {:>12} {:>12} {:>10} {:>7}", "moment", "exact", "estimate", "std err", "z");
    for (name, value) in exact.fields() {
        let (Some(value), Some(est)) = (value, report.moment(name)) else { continue };
        let value = value.to_f64();
        let z = (est.estimate - value) / est.std_error;
        println!("{name:<12} {value:>12.6} {:>12.6} {:>10.6} {z:>7.2}", est.estimate, est.std_error);
    }
}
