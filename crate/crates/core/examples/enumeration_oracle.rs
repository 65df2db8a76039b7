// Usage: cargo run --example enumeration_oracle -- [n1] [n2] [workers]

use runorder::oracle::{count_runs, enumerate_with, parse_labels, EnumerationOptions};
use runorder::{dist, RunsConfig, StatKind};

fn main() {
    let args: Vec<usize> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let n1 = args.first().copied().unwrap_or(7) as u32;
    let n2 = args.get(1).copied().unwrap_or(6) as u32;
    let workers = args.get(2).copied().unwrap_or(4);
    let config = RunsConfig::new(n1, n2).expect("n1, n2 >= 1");

    let seq = parse_labels("xxyxyyx", 'x', 'y').unwrap();
    let stats = count_runs(&seq).unwrap();
    println!("xxyxyyx: R1={} R2={} R={} R_m={} R_M={}", stats.r1, stats.r2, stats.r, stats.r_min, stats.r_max);

    let options = EnumerationOptions { workers, ..EnumerationOptions::default() };
    let report = enumerate_with(config, options).expect("within budget");
    println!("{config}: {} arrangements on {workers} workers", report.sequence_count());

    let exact = dist::joint_pmf_r1r2(config);
    println!("joint matches closed form: {}", exact.entries() == report.joint().entries());
    for stat in StatKind::ALL {
        let same = dist::pmf(config, stat).entries() == report.pmf(stat).entries();
        println!("pmf {stat:<5} matches: {same}");
    }
}
