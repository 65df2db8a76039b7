// Usage: cargo run --example exact_pmf -- [n1] [n2]

use runorder::{dist, RunsConfig};

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (n1, n2) = (args.first().copied().unwrap_or(3), args.get(1).copied().unwrap_or(2));
    let config = RunsConfig::new(n1, n2).expect("n1, n2 >= 1");

    println!("joint pmf of (R1, R2) at {config}");
    for (&(r1, r2), p) in dist::joint_pmf_r1r2(config).entries() {
        println!("  f({r1},{r2}) = {p}");
    }

    println!("joint pmf of (R_m, R_M)");
    for (&(s, t), p) in dist::joint_pmf_minmax(config).entries() {
        println!("  P(R_m={s}, R_M={t}) = {p}");
    }

    for (label, pmf) in [
        ("R_m", dist::pmf_min(config)),
        ("R_M", dist::pmf_max(config)),
        ("R", dist::pmf_total(config)),
    ] {
        println!("{label}:");
        for (&v, p) in pmf.entries() {
            println!("  {v:>3}  {p:<12} {}", p.to_decimal(6));
        }
        assert_eq!(pmf.total(), runorder::ExactRational::one());
    }
}
