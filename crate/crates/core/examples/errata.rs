// Usage: cargo run --example errata
//
// The uncorrected forms in `dist::uncorrected` next to the corrected forms
// and enumeration.

use runorder::verify::errata_checks;

fn main() {
    for check in errata_checks().expect("small configs") {
        println!("{check}");
    }
}
