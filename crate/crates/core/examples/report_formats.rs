// Usage: cargo run --example report_formats

use runorder::cli;

fn main() {
    for args in [
        ["runorder", "dist", "--n1", "3", "--n2", "2", "--stat", "max", "--format", "csv"].as_slice(),
        &["runorder", "dist", "--n1", "3", "--n2", "2", "--stat", "minmax-joint"],
        &["runorder", "moments", "--n1", "3", "--n2", "2", "--format", "csv", "--digits", "4"],
    ] {
        println!("$ {}", args[1..].join(" "));
        let code = cli::run(args.iter().copied(), &mut std::io::stdout(), &mut std::io::stderr());
        assert_eq!(code, 0);
        println!();
    }
}
