// Usage: cargo run --example moments -- [n1] [n2]

use runorder::{dist, Relation, RunsConfig, StatKind};

fn main() {
    let args: Vec<u32> = std::env::args().skip(1).map(|a| a.parse().expect("integer")).collect();
    let (n1, n2) = (args.first().copied().unwrap_or(8), args.get(1).copied().unwrap_or(7));
    let config = RunsConfig::new(n1, n2).expect("n1, n2 >= 1");

    let summary = dist::moments(config);
    for (name, value) in summary.fields() {
        match value {
            Some(v) => println!("{name:<12} {v:<24} {}", v.to_decimal(6)),
            None => println!("{name:<12} undefined"),
        }
    }

    let probs = dist::comparison_probs(config);
    for rel in Relation::ALL {
        println!("P({rel}) = {}", probs.get(rel));
        for stat in [StatKind::Min, StatKind::Max] {
            let mean = dist::cond_mean(config, stat, rel);
            let var = dist::cond_var(config, stat, rel);
            match (mean, var) {
                (Ok(m), Ok(v)) => println!("  E({stat}|{rel}) = {m}, Var = {v}"),
                (m, v) => println!("  {stat}|{rel}: {:?} / {:?}", m.err(), v.err()),
            }
        }
    }
}
