// Usage: cargo run --example exact_arithmetic

use runorder::{binomial, dist, ExactRational, RunsConfig};

fn main() {
    println!("C(100, 50) = {}", binomial(100, 50));
    println!("C(5, 7) = {}", binomial(5, 7));

    let a: ExactRational = "7/10".parse().unwrap();
    let b = ExactRational::new(1, 5);
    println!("{a} + {b} = {}", &a + &b);
    println!("1/8 at 2 digits: {}", ExactRational::new(1, 8).to_decimal(2));

    // tail probabilities far below f64 resolution stay exact
    let config = RunsConfig::new(200, 200).unwrap();
    let p = dist::pmf_total(config).prob(2);
    println!("P(R = 2) at {config} = 1/{}  ({:e})", p.denom(), p.to_f64());
}
