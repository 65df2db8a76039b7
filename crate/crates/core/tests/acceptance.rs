//! Acceptance suite. Prints one PASS/FAIL line per criterion and exits
//! non-zero if any criterion fails.

use std::time::{Duration, Instant};

use runorder::cli;
use runorder::dist::{self, joint_pmf_minmax, moments};
use runorder::oracle::{sample_distribution, EnumerationOptions};
use runorder::output::OutputTable;
use runorder::runs_test::{exact_test, LabeledSequence};
use runorder::verify::{self, VerifyOptions};
use runorder::{ExactRational, RunsConfig, StatKind};

type Check = Result<(), String>;

fn q(p: i64, d: i64) -> ExactRational {
    ExactRational::new(p, d)
}

fn cfg(n1: u32, n2: u32) -> RunsConfig {
    RunsConfig::new(n1, n2).unwrap()
}

fn ensure(cond: bool, msg: impl FnOnce() -> String) -> Check {
    if cond {
        Ok(())
    } else {
        Err(msg())
    }
}

fn example_joint() -> Check {
    let joint = joint_pmf_minmax(cfg(3, 2));
    let expected = [((1, 1), q(1, 5)), ((1, 2), q(3, 10)), ((2, 2), q(2, 5)), ((2, 3), q(1, 10))];
    let got: Vec<_> = joint.entries().iter().map(|(&k, v)| (k, v.clone())).collect();
    ensure(got == expected, || format!("got {got:?}"))
}

fn example_moments() -> Check {
    let m = moments(cfg(3, 2));
    let got = (m.mean_min, m.var_min, m.mean_max, m.var_max, m.cov_min_max);
    let expected = (q(3, 2), Some(q(1, 4)), q(19, 10), Some(q(29, 100)), q(3, 20));
    ensure(got == expected, || format!("got {got:?}"))
}

/// Reference values, in thousandths. Columns per pair: (R_m, R_M) pmf by
/// i = 1.., then E(R_m), E(R_M), Var(R_m), Var(R_M), Cov.
struct Golden {
    pair: (u32, u32),
    min: &'static [i64],
    max: &'static [i64],
    summary: [i64; 5],
}

const GOLDEN: [Golden; 5] = [
    Golden { pair: (3, 3), min: &[300, 600, 100], max: &[100, 600, 300], summary: [1800, 2200, 360, 360, 240] },
    Golden {
        pair: (12, 3),
        min: &[33, 363, 604],
        max: &[4, 125, 508, 363],
        summary: [2571, 3228, 310, 453, 269],
    },
    Golden {
        pair: (10, 5),
        min: &[5, 90, 360, 420, 126],
        max: &[1, 28, 210, 440, 280, 42],
        summary: [3571, 4095, 706, 767, 612],
    },
    Golden {
        pair: (8, 7),
        min: &[2, 49, 245, 408, 245, 49, 2],
        max: &[0, 15, 134, 364, 354, 121, 12, 0],
        summary: [4000, 4466, 923, 925, 800],
    },
    Golden {
        pair: (9, 9),
        min: &[0, 12, 97, 290, 363, 194, 41, 3, 0],
        max: &[0, 3, 41, 194, 363, 290, 97, 12, 0],
        summary: [4764, 5235, 1121, 1121, 996],
    },
];

fn table_one() -> Check {
    let mut out = Vec::new();
    let mut err = Vec::new();
    let code = cli::run(["runorder", "table"], &mut out, &mut err);
    ensure(code == 0, || format!("exit code {code}"))?;
    let table = OutputTable::from_json(std::str::from_utf8(&out).unwrap()).map_err(|e| e.to_string())?;
    let find = |pair: (u32, u32), stat: &str, value: Option<u32>, quantity: Option<&str>| -> Option<i64> {
        let row = table.rows.iter().find(|r| {
            (r.n1, r.n2) == (Some(pair.0), Some(pair.1))
                && r.stat.as_deref() == Some(stat)
                && r.value == value
                && r.quantity.as_deref() == quantity
        })?;
        let text = row.float.as_ref()?.to_string();
        Some((text.parse::<f64>().ok()? * 1000.0).round() as i64)
    };
    let mut cells = 0;
    let mut bad = Vec::new();
    for g in &GOLDEN {
        let mut compare = |label: String, got: Option<i64>, want: i64| {
            cells += 1;
            match got {
                Some(v) if (v - want).abs() <= 1 => {}
                other => bad.push(format!("{:?} {label}: expected {want}e-3, got {other:?}", g.pair)),
            }
        };
        for (i, &want) in g.min.iter().enumerate() {
            compare(format!("P(R_m={})", i + 1), find(g.pair, "min", Some(i as u32 + 1), None), want);
        }
        for (i, &want) in g.max.iter().enumerate() {
            compare(format!("P(R_M={})", i + 1), find(g.pair, "max", Some(i as u32 + 1), None), want);
        }
        let keys = [
            ("min", "expectation"),
            ("max", "expectation"),
            ("min", "variance"),
            ("max", "variance"),
            ("min-max", "covariance"),
        ];
        for ((stat, quantity), &want) in keys.iter().zip(&g.summary) {
            compare(format!("{quantity} {stat}"), find(g.pair, stat, None, Some(quantity)), want);
        }
    }
    ensure(bad.is_empty() && cells == 82, || format!("{cells} cells, mismatches: {bad:?}"))
}

fn oracle_equivalence() -> Check {
    let mut options = VerifyOptions::new(14);
    options.enumeration = EnumerationOptions { workers: 1, ..EnumerationOptions::default() };
    let report = verify::run_verification(options).map_err(|e| e.to_string())?;
    ensure(report.configs.len() == 91, || format!("{} configs", report.configs.len()))?;
    let failures: Vec<String> = report.failures().map(|c| c.to_string()).collect();
    ensure(failures.is_empty(), || failures.join("; "))
}

fn errata() -> Check {
    let checks = verify::errata_checks().map_err(|e| e.to_string())?;
    ensure(checks.len() == 6, || format!("{} checks", checks.len()))?;
    for c in &checks {
        ensure(c.passed(), || c.to_string())?;
    }
    let p = &checks[0];
    ensure(p.uncorrected == q(3, 50) && p.enumerated == q(1, 5), || p.to_string())?;
    let e = &checks[1];
    ensure(e.uncorrected == q(2, 1) && e.enumerated == q(4, 3), || e.to_string())
}

fn identity_suite() -> Check {
    for n1 in 1..=20 {
        for n2 in 1..=20 {
            let mismatches = verify::identity_checks(cfg(n1, n2)).map_err(|e| e.to_string())?;
            ensure(mismatches.is_empty(), || format!("({n1},{n2}): {mismatches:?}"))?;
        }
    }
    Ok(())
}

fn monte_carlo() -> Check {
    let config = cfg(50, 60);
    let report = sample_distribution(config, 100_000, 7).map_err(|e| e.to_string())?;
    let m = moments(config);
    let exact = [
        ("mean_min", m.mean_min.to_f64()),
        ("mean_max", m.mean_max.to_f64()),
        ("var_min", m.var_min.as_ref().unwrap().to_f64()),
        ("var_max", m.var_max.as_ref().unwrap().to_f64()),
        ("cov_min_max", m.cov_min_max.to_f64()),
    ];
    let mut worst = 0.0f64;
    for (name, value) in exact {
        let est = report.moment(name).ok_or_else(|| format!("missing {name}"))?;
        let z = (est.estimate - value).abs() / est.std_error;
        ensure(z <= 4.0, || format!("{name}: estimate {} exact {value} z {z:.2}", est.estimate))?;
        worst = worst.max(z);
    }
    println!("    max |z| = {worst:.2}");
    Ok(())
}

fn exact_test_golden() -> Check {
    let alternating = LabeledSequence::raw(runorder::oracle::parse_labels("xyxyxyxyxy", 'x', 'y').unwrap());
    let blocked = LabeledSequence::raw(runorder::oracle::parse_labels("xxxxxyyyyy", 'x', 'y').unwrap());
    let up = exact_test(&alternating, StatKind::Total).map_err(|e| e.to_string())?;
    let down = exact_test(&blocked, StatKind::Total).map_err(|e| e.to_string())?;
    ensure(up.p_upper == q(1, 126), || format!("p_upper {}", up.p_upper))?;
    ensure(down.p_lower == q(1, 126), || format!("p_lower {}", down.p_lower))?;
    ensure(dist::pmf_total(cfg(5, 5)).prob(10) == q(1, 126), || "pmf mismatch".into())
}

fn main() {
    let criteria: [(&str, fn() -> Check, Duration); 8] = [
        ("1 example joint table (R_m,R_M) at (3,2)", example_joint, Duration::from_millis(1)),
        ("2 example moments at (3,2)", example_moments, Duration::from_millis(1)),
        ("3 default table within 1e-3 of reference values", table_one, Duration::from_secs(1)),
        ("4 oracle equivalence, 91 configs n1+n2<=14", oracle_equivalence, Duration::from_secs(30)),
        ("5 errata: corrected forms agree, uncorrected forms do not", errata, Duration::from_secs(1)),
        ("6 identity suite n1,n2<=20", identity_suite, Duration::from_secs(5)),
        ("7 Monte Carlo (50,60), 1e5 samples, 4 SE", monte_carlo, Duration::from_secs(10)),
        ("8 exact test golden values 1/126", exact_test_golden, Duration::from_secs(1)),
    ];
    let mut failed = 0;
    for (name, check, limit) in criteria {
        let start = Instant::now();
        let result = check();
        let elapsed = start.elapsed();
        let verdict = match (&result, elapsed <= limit) {
            (Ok(()), true) => "PASS".to_string(),
            (Ok(()), false) => format!("FAIL (over time limit {limit:?})"),
            (Err(e), _) => format!("FAIL ({e})"),
        };
        if !verdict.starts_with("PASS") {
            failed += 1;
        }
        println!("{verdict:<4} criterion {name} [{elapsed:.3?}]");
    }
    println!("acceptance: {} of 8 passed", 8 - failed);
    if failed > 0 {
        std::process::exit(1);
    }
}
