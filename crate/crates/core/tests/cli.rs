use std::fs;
use std::path::PathBuf;
use std::process::{Command, Output};

use runorder::output::OutputTable;
use runorder::ExactRational;

fn runorder(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_runorder"))
        .args(args)
        .output()
        .expect("binary runs")
}

fn stdout(out: &Output) -> String {
    String::from_utf8(out.stdout.clone()).unwrap()
}

fn json(args: &[&str]) -> OutputTable {
    let out = runorder(args);
    assert_eq!(out.status.code(), Some(0), "{}", String::from_utf8_lossy(&out.stderr));
    OutputTable::from_json(&stdout(&out)).unwrap()
}

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p, d)
}

fn scratch(name: &str, contents: &str) -> PathBuf {
    let dir = std::env::temp_dir().join(format!("runorder-cli-{}", std::process::id()));
    fs::create_dir_all(&dir).unwrap();
    let path = dir.join(name);
    fs::write(&path, contents).unwrap();
    path
}

#[test]
fn dist_max_csv() {
    let out = runorder(&["dist", "--n1", "3", "--n2", "2", "--stat", "max", "--format", "csv"]);
    assert_eq!(out.status.code(), Some(0));
    assert_eq!(
        stdout(&out),
        "value,probability_num,probability_den,probability_float\n\
         1,1,5,0.200000\n2,7,10,0.700000\n3,1,10,0.100000\n"
    );
}

#[test]
fn dist_trivial_total() {
    let table = json(&["dist", "--n1", "1", "--n2", "1", "--stat", "total"]);
    assert_eq!(table.rows.len(), 1);
    assert_eq!(table.rows[0].value, Some(2));
    assert_eq!(table.rows[0].rational(), Some(q(1, 1)));
    assert_eq!(table.rows[0].float.as_ref().unwrap().to_string(), "1.000000");
    assert_eq!((table.meta.n1, table.meta.n2), (Some(1), Some(1)));
    assert_eq!(table.meta.stat, "total");
}

#[test]
fn dist_min_three_digits() {
    let table = json(&["dist", "--n1", "10", "--n2", "5", "--stat", "min", "--digits", "3"]);
    let floats: Vec<String> = table.rows.iter().map(|r| r.float.as_ref().unwrap().to_string()).collect();
    assert_eq!(floats, ["0.005", "0.090", "0.360", "0.420", "0.126"]);
}

#[test]
fn dist_joint_keys() {
    let table = json(&["dist", "--n1", "3", "--n2", "2", "--stat", "r1r2-joint"]);
    assert!(table.rows.iter().all(|r| r.r1.is_some() && r.r2.is_some()));
    let table = json(&["dist", "--n1", "3", "--n2", "2", "--stat", "minmax-joint"]);
    let cells: Vec<_> = table.rows.iter().map(|r| (r.s.unwrap(), r.t.unwrap(), r.rational().unwrap())).collect();
    assert_eq!(cells, [(1, 1, q(1, 5)), (1, 2, q(3, 10)), (2, 2, q(2, 5)), (2, 3, q(1, 10))]);
}

#[test]
fn json_round_trip_every_command() {
    let x = scratch("rt-x.txt", "1\n2\n3\n");
    let y = scratch("rt-y.txt", "4\n5\n");
    let invocations: Vec<Vec<&str>> = vec![
        vec!["dist", "--n1", "4", "--n2", "3", "--stat", "minmax-joint"],
        vec!["moments", "--n1", "4", "--n2", "3"],
        vec!["moments", "--n1", "1", "--n2", "1"],
        vec!["table"],
        vec!["test", "--sequence", "xxyxy", "--stat", "min"],
        vec!["test", "--x-file", x.to_str().unwrap(), "--y-file", y.to_str().unwrap()],
        vec!["sample", "--n1", "3", "--n2", "2", "--reps", "500", "--seed", "9"],
    ];
    for args in invocations {
        let out = runorder(&args);
        assert_eq!(out.status.code(), Some(0), "{args:?}");
        let text = stdout(&out);
        let parsed = OutputTable::from_json(&text).unwrap();
        assert_eq!(parsed.to_json(), text, "{args:?}");
    }
}

#[test]
fn csv_and_json_agree() {
    for args in [
        vec!["dist", "--n1", "6", "--n2", "4", "--stat", "max"],
        vec!["moments", "--n1", "8", "--n2", "7"],
        vec!["table", "--pair", "12,3"],
        vec!["sample", "--n1", "4", "--n2", "4", "--reps", "300", "--seed", "1"],
    ] {
        let table = json(&args);
        let mut csv_args = args.clone();
        csv_args.extend(["--format", "csv"]);
        let csv = stdout(&runorder(&csv_args));
        let mut lines = csv.lines();
        let header: Vec<&str> = lines.next().unwrap().split(',').collect();
        let col = |name: &str| header.iter().position(|h| h.ends_with(name));
        let (num, den, float) = (col("_num").unwrap(), col("_den").unwrap(), col("_float").unwrap());
        let rows: Vec<Vec<&str>> = lines.map(|l| l.split(',').collect()).collect();
        assert_eq!(rows.len(), table.rows.len(), "{args:?}");
        for (cells, row) in rows.iter().zip(&table.rows) {
            let text = |n: &Option<serde_json::Number>| n.as_ref().map(|n| n.to_string()).unwrap_or_default();
            assert_eq!(cells[num], text(&row.num));
            assert_eq!(cells[den], text(&row.den));
            assert_eq!(cells[float], text(&row.float));
            if let Some(e) = col("empirical") {
                assert_eq!(cells[e], text(&row.empirical));
            }
        }
    }
}

#[test]
fn moments_reports() {
    let table = json(&["moments", "--n1", "8", "--n2", "7", "--digits", "3"]);
    let get = |name: &str| {
        let row = table.rows.iter().find(|r| r.quantity.as_deref() == Some(name)).unwrap();
        row.float.as_ref().map(|f| f.to_string())
    };
    assert_eq!(get("mean_min").as_deref(), Some("4.000"));
    assert_eq!(get("cov_min_max").as_deref(), Some("0.800"));
    assert_eq!(get("var_min").as_deref(), Some("0.923"));

    let table = json(&["moments", "--n1", "3", "--n2", "2"]);
    let exact = |name: &str| {
        table.rows.iter().find(|r| r.quantity.as_deref() == Some(name)).unwrap().rational().unwrap()
    };
    assert_eq!(exact("mean_min"), q(3, 2));
    assert_eq!(exact("mean_max"), q(19, 10));
    assert_eq!(exact("var_min"), q(1, 4));
    assert_eq!(exact("var_max"), q(29, 100));
    assert_eq!(exact("cov_min_max"), q(3, 20));
    assert_eq!(exact("cond_mean_min_gt"), q(4, 3));

    let table = json(&["moments", "--n1", "1", "--n2", "1"]);
    for name in ["var_min", "var_max"] {
        let row = table.rows.iter().find(|r| r.quantity.as_deref() == Some(name)).unwrap();
        assert!(row.num.is_none());
        assert!(row.note.as_deref().unwrap().starts_with("undefined"));
    }
}

#[test]
fn table_pairs() {
    let table = json(&["table", "--pair", "3,3"]);
    let min: Vec<String> = table
        .rows
        .iter()
        .filter(|r| r.stat.as_deref() == Some("min") && r.value.is_some())
        .map(|r| r.float.as_ref().unwrap().to_string())
        .collect();
    assert_eq!(min, ["0.300", "0.600", "0.100"]);

    let table = json(&["table", "--pair", "2,2"]);
    let min: Vec<ExactRational> = table
        .rows
        .iter()
        .filter(|r| r.stat.as_deref() == Some("min") && r.value.is_some())
        .map(|r| r.rational().unwrap())
        .collect();
    assert_eq!(min, [q(2, 3), q(1, 3)]);

    let text = stdout(&runorder(&["table", "--format", "text"]));
    assert!(text.lines().last().unwrap().ends_with("0.997"));
    assert_eq!(runorder(&["table", "--pair", "0,3"]).status.code(), Some(2));
}

#[test]
fn verify_exit_codes() {
    let out = runorder(&["verify", "--max-n", "14", "--quiet"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("91 passed, 0 failed"));

    let out = runorder(&["verify", "--max-n", "5", "--uncorrected", "pmf-max"]);
    assert_eq!(out.status.code(), Some(1));
    assert!(stdout(&out).contains("FAIL n1=3 n2=2"));

    let out = runorder(&["verify", "--max-n", "2"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("1 passed"));

    let out = runorder(&["verify", "--max-n", "8", "--budget", "20"]);
    assert_eq!(out.status.code(), Some(0));
    assert!(stdout(&out).contains("SKIP"));

    assert_eq!(runorder(&["verify", "--max-n", "1"]).status.code(), Some(2));
}

#[test]
fn test_command() {
    let table = json(&["test", "--sequence", "xyxyxyxyxy", "--stat", "total"]);
    let p_upper = table.rows.iter().find(|r| r.quantity.as_deref() == Some("p_upper")).unwrap();
    assert_eq!(p_upper.rational(), Some(q(1, 126)));
    assert_eq!(table.meta.observed, Some(10));

    let x = scratch("low.txt", "0.1\n0.5\n\n1.5\n2\n3\n");
    let y = scratch("high.txt", "10\n11\n12\n13\n14\n");
    let table = json(&["test", "--x-file", x.to_str().unwrap(), "--y-file", y.to_str().unwrap()]);
    let p_lower = table.rows.iter().find(|r| r.quantity.as_deref() == Some("p_lower")).unwrap();
    assert_eq!(p_lower.rational(), Some(q(1, 126)));
    assert_eq!(table.meta.observed, Some(2));
    assert_eq!(table.meta.tie_policy.as_deref(), Some("error"));

    let tx = scratch("tie-x.txt", "1\n2\n");
    let ty = scratch("tie-y.txt", "2\n");
    let (tx, ty) = (tx.to_str().unwrap(), ty.to_str().unwrap());
    let out = runorder(&["test", "--x-file", tx, "--y-file", ty]);
    assert_eq!(out.status.code(), Some(3));
    assert!(String::from_utf8_lossy(&out.stderr).contains("tie"));
    let out = runorder(&["test", "--x-file", tx, "--y-file", ty, "--ties", "jitter", "--seed", "4"]);
    assert_eq!(out.status.code(), Some(0));

    let bad = scratch("bad.txt", "1\nabc\n");
    let out = runorder(&["test", "--x-file", bad.to_str().unwrap(), "--y-file", ty]);
    assert_eq!(out.status.code(), Some(2));
    assert_eq!(runorder(&["test", "--sequence", "xxzy"]).status.code(), Some(2));
    assert_eq!(runorder(&["test", "--sequence", "xxxx"]).status.code(), Some(2));
    assert_eq!(runorder(&["test", "--sequence", "aabab", "--symbols", "ab"]).status.code(), Some(0));
}

#[test]
fn sample_is_deterministic() {
    let args = ["sample", "--n1", "5", "--n2", "4", "--reps", "2000", "--seed", "11"];
    let a = runorder(&args);
    let b = runorder(&args);
    assert_eq!(a.status.code(), Some(0));
    assert_eq!(a.stdout, b.stdout);
    let table = OutputTable::from_json(&stdout(&a)).unwrap();
    assert_eq!(table.meta.reps, Some(2000));
    let mean_max = table.rows.iter().find(|r| r.quantity.as_deref() == Some("mean_max")).unwrap();
    assert!(mean_max.rational().is_some() && mean_max.empirical.is_some());
    assert_eq!(runorder(&["sample", "--n1", "3", "--n2", "2", "--reps", "0"]).status.code(), Some(2));
}

#[test]
fn usage_errors() {
    let out = runorder(&["dist", "--n1", "0", "--n2", "2", "--stat", "max"]);
    assert_eq!(out.status.code(), Some(2));
    assert!(!out.stderr.is_empty());
    assert_eq!(runorder(&["dist", "--n1", "3", "--stat", "max"]).status.code(), Some(2));
    assert_eq!(runorder(&["frobnicate"]).status.code(), Some(2));
    assert_eq!(runorder(&["--version"]).status.code(), Some(0));
}
