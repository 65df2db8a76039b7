// Usage: cargo run --example table_one
//
// Marginal pmfs of R_m and R_M, with expectation, variance and covariance,
// for five sample-size pairs at three decimals.

use runorder::cli::{table_text, TABLE_PAIRS};

fn main() {
    print!("{}", table_text(&TABLE_PAIRS, 3));
}
