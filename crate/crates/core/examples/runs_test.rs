// Usage: cargo run --example runs_test

use runorder::oracle::parse_labels;
use runorder::runs_test::{exact_test, label_pooled_samples, LabeledSequence, TiePolicy};
use runorder::StatKind;

fn main() {
    let x = [0.42, 1.31, 0.77, 2.05, 0.12, 1.64];
    let y = [2.51, 3.10, 1.92, 2.88, 3.47];
    let seq = label_pooled_samples(&x, &y, TiePolicy::Error).expect("no ties");
    for stat in [StatKind::Total, StatKind::Max, StatKind::Min] {
        let r = exact_test(&seq, stat).unwrap();
        println!(
            "{stat:<5} observed {:>2}  lower {} upper {} two-sided {} ({:.4})",
            r.observed, r.p_lower, r.p_upper, r.p_two_sided, r.p_two_sided.to_f64()
        );
    }

    let tied = label_pooled_samples(&[1.0, 2.0], &[2.0], TiePolicy::Error);
    println!("tied samples: {}", tied.unwrap_err());
    let jittered = label_pooled_samples(&[1.0, 2.0], &[2.0], TiePolicy::RandomJitter { seed: 3 }).unwrap();
    println!("with jitter: {:?}", jittered.labels());

    let alternating = LabeledSequence::raw(parse_labels("xyxyxyxyxy", 'x', 'y').unwrap());
    let r = exact_test(&alternating, StatKind::Total).unwrap();
    println!("xyxyxyxyxy: P(R >= {}) = {}", r.observed, r.p_upper);
}
