//! Command-line front end.
//!
//! Exit codes: 0 success, 1 verification failure, 2 usage or parse error,
//! 3 data-policy violation (cross-sample tie).

use std::ffi::OsString;
use std::fmt::Write as _;
use std::io::Write;
use std::path::{Path, PathBuf};

use clap::{Args, Parser, Subcommand, ValueEnum};

use crate::config::{Relation, RunsConfig, StatKind};
use crate::dist::{self, JointPmf, MomentSummary, Pmf};
use crate::error::Error;
use crate::exact::ExactRational;
use crate::oracle::{self, EnumerationOptions, DEFAULT_BUDGET};
use crate::output::{float_number, Format, Meta, OutputTable, Row};
use crate::runs_test::{exact_test, label_pooled_samples, LabeledSequence, TiePolicy};
use crate::verify::{self, Variant, VerifyOptions};

pub const EXIT_OK: i32 = 0;
pub const EXIT_VERIFY_FAILED: i32 = 1;
pub const EXIT_USAGE: i32 = 2;
pub const EXIT_POLICY: i32 = 3;

/// Default `(n1, n2)` pairs for `table`.
pub const TABLE_PAIRS: [(u32, u32); 5] = [(3, 3), (12, 3), (10, 5), (8, 7), (9, 9)];

#[derive(Debug, Parser)]
#[command(
    name = "runorder",
    version,
    about = "Exact distributions of runs order statistics"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Print a pmf or joint pmf.
    Dist(DistArgs),
    /// Print closed-form moments, including conditional ones.
    Moments(MomentsArgs),
    /// Print marginal pmfs and moments of R_m and R_M for several configurations.
    Table(TableArgs),
    /// Check every closed form against exhaustive enumeration.
    Verify(VerifyArgs),
    /// Exact runs test on two samples or a labeled sequence.
    Test(TestArgs),
    /// Monte Carlo estimates next to the exact values.
    Sample(SampleArgs),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum FormatArg {
    Json,
    Csv,
}

impl From<FormatArg> for Format {
    fn from(f: FormatArg) -> Self {
        match f {
            FormatArg::Json => Format::Json,
            FormatArg::Csv => Format::Csv,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TableFormat {
    Json,
    Csv,
    Text,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DistStat {
    R1r2Joint,
    MinmaxJoint,
    Max,
    Min,
    Total,
    R1,
    R2,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum TestStat {
    Total,
    Max,
    Min,
}

impl From<TestStat> for StatKind {
    fn from(s: TestStat) -> Self {
        match s {
            TestStat::Total => StatKind::Total,
            TestStat::Max => StatKind::Max,
            TestStat::Min => StatKind::Min,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Ties {
    Error,
    Jitter,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum UncorrectedFormula {
    PmfMax,
    CondMeanMin,
    CondVarMin,
}

#[derive(Debug, Args)]
pub struct ConfigArgs {
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n1: u32,
    #[arg(long, value_parser = clap::value_parser!(u32).range(1..))]
    pub n2: u32,
}

impl ConfigArgs {
    fn config(&self) -> RunsConfig {
        RunsConfig::new(self.n1, self.n2).expect("clap enforces n >= 1")
    }
}

#[derive(Debug, Args)]
pub struct DistArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum)]
    pub stat: DistStat,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct MomentsArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct TableArgs {
    /// Configuration as `n1,n2`; repeatable. Defaults to 3,3 12,3 10,5 8,7 9,9.
    #[arg(long = "pair", value_parser = parse_pair)]
    pub pairs: Vec<(u32, u32)>,
    #[arg(long, value_enum, default_value = "json")]
    pub format: TableFormat,
    #[arg(long, default_value_t = 3)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct VerifyArgs {
    /// Largest total sample size n1 + n2 to check.
    #[arg(long, default_value_t = 14, value_parser = clap::value_parser!(u32).range(2..))]
    pub max_n: u32,
    /// Maximum arrangements enumerated per configuration.
    #[arg(long, default_value_t = DEFAULT_BUDGET)]
    pub budget: u64,
    #[arg(long, default_value_t = 1)]
    pub workers: usize,
    /// Swap in an uncorrected formula; the sweep is then expected to fail.
    #[arg(long, value_enum)]
    pub uncorrected: Vec<UncorrectedFormula>,
    /// Print only failures, skips and the summary.
    #[arg(long)]
    pub quiet: bool,
}

#[derive(Debug, Args)]
pub struct TestArgs {
    /// File of x values, one per line.
    #[arg(long, requires = "y_file", conflicts_with = "sequence")]
    pub x_file: Option<PathBuf>,
    /// File of y values, one per line.
    #[arg(long, requires = "x_file")]
    pub y_file: Option<PathBuf>,
    /// Pre-labeled sequence such as `xxyxy`.
    #[arg(long, required_unless_present = "x_file")]
    pub sequence: Option<String>,
    /// The two symbols used in `--sequence`, x first.
    #[arg(long, default_value = "xy", value_parser = parse_symbols)]
    pub symbols: (char, char),
    #[arg(long, value_enum, default_value = "total")]
    pub stat: TestStat,
    #[arg(long, value_enum, default_value = "error")]
    pub ties: Ties,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
}

#[derive(Debug, Args)]
pub struct SampleArgs {
    #[command(flatten)]
    pub config: ConfigArgs,
    #[arg(long, default_value_t = 100_000, value_parser = clap::value_parser!(u64).range(1..))]
    pub reps: u64,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    #[arg(long, value_enum, default_value = "json")]
    pub format: FormatArg,
    #[arg(long, default_value_t = 6)]
    pub digits: u32,
}

fn parse_pair(s: &str) -> Result<(u32, u32), String> {
    let (a, b) = s
        .split_once(',')
        .ok_or_else(|| format!("expected n1,n2 but got {s:?}"))?;
    let a: u32 = a.trim().parse().map_err(|e| format!("{e}"))?;
    let b: u32 = b.trim().parse().map_err(|e| format!("{e}"))?;
    RunsConfig::new(a, b).map_err(|e| e.to_string())?;
    Ok((a, b))
}

fn parse_symbols(s: &str) -> Result<(char, char), String> {
    let chars: Vec<char> = s.chars().collect();
    match chars.as_slice() {
        [x, y] if x != y => Ok((*x, *y)),
        _ => Err(format!("expected two distinct symbols, got {s:?}")),
    }
}

/// A failed command: exit code and diagnostic.
#[derive(Debug)]
pub struct Failure {
    pub code: i32,
    pub message: String,
}

impl From<Error> for Failure {
    fn from(e: Error) -> Self {
        let code = match e {
            Error::CrossSampleTie { .. } => EXIT_POLICY,
            _ => EXIT_USAGE,
        };
        Failure {
            code,
            message: e.to_string(),
        }
    }
}

/// Parses `args` (program name first) and runs the command.
pub fn run<I, T>(args: I, stdout: &mut dyn Write, stderr: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            if e.use_stderr() {
                let _ = stderr.write_all(text.as_bytes());
                return EXIT_USAGE;
            }
            let _ = stdout.write_all(text.as_bytes());
            return EXIT_OK;
        }
    };
    match execute(&cli.command) {
        Ok((text, code)) => {
            let _ = stdout.write_all(text.as_bytes());
            code
        }
        Err(failure) => {
            let _ = writeln!(stderr, "error: {}", failure.message);
            failure.code
        }
    }
}

/// Runs a parsed command, returning its standard output and exit code.
pub fn execute(command: &Command) -> Result<(String, i32), Failure> {
    match command {
        Command::Dist(args) => Ok((cmd_dist(args).render(args.format.into()), EXIT_OK)),
        Command::Moments(args) => Ok((cmd_moments(args)?.render(args.format.into()), EXIT_OK)),
        Command::Table(args) => Ok((cmd_table(args), EXIT_OK)),
        Command::Verify(args) => cmd_verify(args),
        Command::Test(args) => Ok((cmd_test(args)?.render(args.format.into()), EXIT_OK)),
        Command::Sample(args) => Ok((cmd_sample(args)?.render(args.format.into()), EXIT_OK)),
    }
}

fn pmf_rows(pmf: &Pmf, digits: u32) -> Vec<Row> {
    pmf.entries()
        .iter()
        .map(|(&value, p)| {
            Row {
                value: Some(value),
                ..Row::default()
            }
            .exact(p, digits)
        })
        .collect()
}

fn joint_rows(joint: &JointPmf, digits: u32, r1r2: bool) -> Vec<Row> {
    joint
        .entries()
        .iter()
        .map(|(&(a, b), p)| {
            let row = if r1r2 {
                Row {
                    r1: Some(a),
                    r2: Some(b),
                    ..Row::default()
                }
            } else {
                Row {
                    s: Some(a),
                    t: Some(b),
                    ..Row::default()
                }
            };
            row.exact(p, digits)
        })
        .collect()
}

pub fn cmd_dist(args: &DistArgs) -> OutputTable {
    let config = args.config.config();
    let (name, rows) = match args.stat {
        DistStat::R1r2Joint => (
            "r1r2-joint",
            joint_rows(&dist::joint_pmf_r1r2(config), args.digits, true),
        ),
        DistStat::MinmaxJoint => (
            "minmax-joint",
            joint_rows(&dist::joint_pmf_minmax(config), args.digits, false),
        ),
        DistStat::Max => ("max", pmf_rows(&dist::pmf_max(config), args.digits)),
        DistStat::Min => ("min", pmf_rows(&dist::pmf_min(config), args.digits)),
        DistStat::Total => ("total", pmf_rows(&dist::pmf_total(config), args.digits)),
        DistStat::R1 => ("r1", pmf_rows(&dist::pmf_r1(config), args.digits)),
        DistStat::R2 => ("r2", pmf_rows(&dist::pmf_r2(config), args.digits)),
    };
    let meta = Meta::new(name, args.digits).with_config(config.n1(), config.n2());
    let mut table = OutputTable::new(meta, "probability");
    table.rows = rows;
    table
}

fn quantity(name: impl Into<String>) -> Row {
    Row {
        quantity: Some(name.into()),
        ..Row::default()
    }
}

fn moment_rows(summary: &MomentSummary, digits: u32) -> Vec<Row> {
    let n = summary.config.n();
    summary
        .fields()
        .into_iter()
        .map(|(name, value)| {
            quantity(name).maybe_exact(value, digits, &format!("needs n > 2, got n = {n}"))
        })
        .collect()
}

/// Conditional moments: closed form where its preconditions hold,
/// enumeration for configurations too small for the closed form.
fn conditional_rows(config: RunsConfig, digits: u32) -> Result<Vec<Row>, Error> {
    let mut fallback = None;
    let mut rows = Vec::new();
    let probs = dist::comparison_probs(config);
    for rel in Relation::ALL {
        rows.push(quantity(format!("p_{}", rel.name())).exact(probs.get(rel), digits));
    }
    for stat in [StatKind::Min, StatKind::Max] {
        for rel in Relation::ALL {
            for (label, variance) in [("cond_mean", false), ("cond_var", true)] {
                let name = format!("{label}_{stat}_{}", rel.name());
                let closed = if variance {
                    dist::cond_var(config, stat, rel)
                } else {
                    dist::cond_mean(config, stat, rel)
                };
                let row = match closed {
                    Ok(v) => quantity(name).exact(&v, digits).note("closed-form"),
                    Err(Error::ZeroProbabilityCondition { .. }) => {
                        quantity(name).note("undefined: conditioning event has probability zero")
                    }
                    Err(Error::DomainTooSmall { .. }) => {
                        if fallback.is_none() {
                            fallback = Some(oracle::enumerate_distribution(config)?);
                        }
                        let report = fallback.as_ref().expect("just set");
                        match report.conditional(stat, rel) {
                            Some(m) => {
                                let v = if variance { &m.var } else { &m.mean };
                                quantity(name).exact(v, digits).note("enumeration")
                            }
                            None => quantity(name)
                                .note("undefined: conditioning event has probability zero"),
                        }
                    }
                    Err(e) => return Err(e),
                };
                rows.push(row);
            }
        }
    }
    Ok(rows)
}

pub fn cmd_moments(args: &MomentsArgs) -> Result<OutputTable, Error> {
    let config = args.config.config();
    let meta = Meta::new("moments", args.digits).with_config(config.n1(), config.n2());
    let mut table = OutputTable::new(meta, "value");
    table.rows = moment_rows(&dist::moments(config), args.digits);
    table.rows.extend(conditional_rows(config, args.digits)?);
    Ok(table)
}

/// Rows for one configuration of the `table` report.
fn table_rows(config: RunsConfig, digits: u32) -> Vec<Row> {
    let keyed = |stat: &str| Row {
        n1: Some(config.n1()),
        n2: Some(config.n2()),
        stat: Some(stat.to_string()),
        ..Row::default()
    };
    let mut rows = Vec::new();
    for (name, pmf) in [
        ("min", dist::pmf_min(config)),
        ("max", dist::pmf_max(config)),
    ] {
        for (&value, p) in pmf.entries() {
            rows.push(
                Row {
                    value: Some(value),
                    ..keyed(name)
                }
                .exact(p, digits),
            );
        }
    }
    let m = dist::moments(config);
    let reason = format!("needs n > 2, got n = {}", config.n());
    let moments: [(&str, &str, Option<&ExactRational>); 5] = [
        ("min", "expectation", Some(&m.mean_min)),
        ("max", "expectation", Some(&m.mean_max)),
        ("min", "variance", m.var_min.as_ref()),
        ("max", "variance", m.var_max.as_ref()),
        ("min-max", "covariance", Some(&m.cov_min_max)),
    ];
    for (stat, name, value) in moments {
        rows.push(
            Row {
                quantity: Some(name.into()),
                ..keyed(stat)
            }
            .maybe_exact(value, digits, &reason),
        );
    }
    rows
}

pub fn table_report(pairs: &[(u32, u32)], digits: u32) -> OutputTable {
    let mut table = OutputTable::new(Meta::new("table", digits), "value");
    for &(n1, n2) in pairs {
        let config = RunsConfig::new(n1, n2).expect("pairs validated at parse time");
        table.rows.extend(table_rows(config, digits));
    }
    table
}

/// Fixed-width grid: one `R_m`/`R_M` column pair per configuration.
pub fn table_text(pairs: &[(u32, u32)], digits: u32) -> String {
    let configs: Vec<RunsConfig> = pairs
        .iter()
        .map(|&(a, b)| RunsConfig::new(a, b).expect("validated"))
        .collect();
    let pmfs: Vec<(Pmf, Pmf)> = configs
        .iter()
        .map(|&c| (dist::pmf_min(c), dist::pmf_max(c)))
        .collect();
    let moments: Vec<MomentSummary> = configs.iter().map(|&c| dist::moments(c)).collect();
    let max_i = pmfs
        .iter()
        .filter_map(|(_, max)| max.support())
        .map(|(_, hi)| hi)
        .max()
        .unwrap_or(0);
    let width = (digits as usize + 4).max(8);
    let cell = |q: Option<&ExactRational>| match q {
        Some(q) => format!("{:>width$}", q.to_decimal(digits)),
        None => format!("{:>width$}", "-"),
    };

    let mut out = String::new();
    let _ = write!(out, "{:<12}", "(n1,n2)");
    for c in &configs {
        let _ = write!(
            out,
            "{:>w$}",
            format!("{},{}", c.n1(), c.n2()),
            w = 2 * width
        );
    }
    out.push('\n');
    let _ = write!(out, "{:<12}", "i");
    for _ in &configs {
        let _ = write!(out, "{:>width$}{:>width$}", "R_m", "R_M");
    }
    out.push('\n');
    for i in 1..=max_i {
        let _ = write!(out, "{i:<12}");
        for (min, max) in &pmfs {
            let show = |pmf: &Pmf| {
                let bound = dist::max_support_bound(pmf.config());
                let limit = if pmf.stat() == StatKind::Min {
                    pmf.config().n1().min(pmf.config().n2())
                } else {
                    bound
                };
                if i <= limit {
                    cell(Some(&pmf.prob(i)))
                } else {
                    format!("{:>width$}", "")
                }
            };
            let _ = write!(out, "{}{}", show(min), show(max));
        }
        out.push('\n');
    }
    let _ = write!(out, "{:<12}", "Expectation");
    for m in &moments {
        let _ = write!(
            out,
            "{}{}",
            cell(Some(&m.mean_min)),
            cell(Some(&m.mean_max))
        );
    }
    out.push('\n');
    let _ = write!(out, "{:<12}", "Variance");
    for m in &moments {
        let _ = write!(
            out,
            "{}{}",
            cell(m.var_min.as_ref()),
            cell(m.var_max.as_ref())
        );
    }
    out.push('\n');
    let _ = write!(out, "{:<12}", "Covariance");
    for m in &moments {
        let _ = write!(
            out,
            "{:>w$}",
            m.cov_min_max.to_decimal(digits),
            w = 2 * width
        );
    }
    out.push('\n');
    out
}

pub fn cmd_table(args: &TableArgs) -> String {
    let pairs: Vec<(u32, u32)> = if args.pairs.is_empty() {
        TABLE_PAIRS.to_vec()
    } else {
        args.pairs.clone()
    };
    match args.format {
        TableFormat::Json => table_report(&pairs, args.digits).to_json(),
        TableFormat::Csv => table_report(&pairs, args.digits).to_csv(),
        TableFormat::Text => table_text(&pairs, args.digits),
    }
}

pub fn cmd_verify(args: &VerifyArgs) -> Result<(String, i32), Failure> {
    let mut options = VerifyOptions::new(args.max_n);
    options.enumeration = EnumerationOptions {
        budget: args.budget,
        workers: args.workers.max(1),
    };
    for formula in &args.uncorrected {
        match formula {
            UncorrectedFormula::PmfMax => options.formulas.pmf_max = Variant::Uncorrected,
            UncorrectedFormula::CondMeanMin => {
                options.formulas.cond_mean_min = Variant::Uncorrected
            }
            UncorrectedFormula::CondVarMin => options.formulas.cond_var_min = Variant::Uncorrected,
        }
    }
    let report = verify::run_verification(options)?;
    let mut out = String::new();
    let (mut passed, mut failed, mut skipped) = (0, 0, 0);
    for check in &report.configs {
        let show = match check.outcome {
            verify::Outcome::Pass { .. } => {
                passed += 1;
                !args.quiet
            }
            verify::Outcome::Fail { .. } => {
                failed += 1;
                true
            }
            verify::Outcome::Skipped { .. } => {
                skipped += 1;
                true
            }
        };
        if show {
            let _ = writeln!(out, "{check}");
        }
    }
    for erratum in &report.errata {
        if !args.quiet || !erratum.passed() {
            let _ = writeln!(out, "{erratum}");
        }
    }
    let errata_failed = report.errata.iter().filter(|e| !e.passed()).count();
    let _ = writeln!(
        out,
        "summary: {passed} passed, {failed} failed, {skipped} skipped, errata {}/{} confirmed",
        report.errata.len() - errata_failed,
        report.errata.len(),
    );
    let code = if report.passed() {
        EXIT_OK
    } else {
        EXIT_VERIFY_FAILED
    };
    Ok((out, code))
}

/// Reads one finite number per line; blank lines are skipped.
pub fn read_sample_file(path: &Path) -> Result<Vec<f64>, Error> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Error::Parse(format!("cannot read {}: {e}", path.display())))?;
    parse_sample(&text).map_err(|e| match e {
        Error::Parse(msg) => Error::Parse(format!("{}: {msg}", path.display())),
        other => other,
    })
}

pub fn parse_sample(text: &str) -> Result<Vec<f64>, Error> {
    text.lines()
        .enumerate()
        .filter(|(_, line)| !line.trim().is_empty())
        .map(|(i, line)| {
            line.trim().parse::<f64>().map_err(|_| {
                Error::Parse(format!("line {}: not a number: {:?}", i + 1, line.trim()))
            })
        })
        .collect()
}

pub fn cmd_test(args: &TestArgs) -> Result<OutputTable, Error> {
    let policy = match args.ties {
        Ties::Error => TiePolicy::Error,
        Ties::Jitter => TiePolicy::RandomJitter { seed: args.seed },
    };
    let seq = match (&args.x_file, &args.y_file, &args.sequence) {
        (Some(x), Some(y), _) => {
            let x = read_sample_file(x)?;
            let y = read_sample_file(y)?;
            label_pooled_samples(&x, &y, policy)?
        }
        (_, _, Some(s)) => {
            LabeledSequence::raw(oracle::parse_labels(s, args.symbols.0, args.symbols.1)?)
        }
        _ => {
            return Err(Error::Parse(
                "need --x-file and --y-file, or --sequence".into(),
            ))
        }
    };
    let result = exact_test(&seq, args.stat.into())?;
    let mut meta = Meta::new(result.stat.name(), args.digits)
        .with_config(result.config.n1(), result.config.n2());
    meta.observed = Some(result.observed);
    meta.tie_policy = Some(match result.tie_policy {
        None => "not-applicable".into(),
        Some(TiePolicy::Error) => "error".into(),
        Some(TiePolicy::RandomJitter { seed }) => format!("random-jitter(seed={seed})"),
    });
    let mut table = OutputTable::new(meta, "value");
    for (name, p) in [
        ("p_lower", &result.p_lower),
        ("p_upper", &result.p_upper),
        ("p_two_sided", &result.p_two_sided),
    ] {
        table.rows.push(quantity(name).exact(p, args.digits));
    }
    Ok(table)
}

pub fn cmd_sample(args: &SampleArgs) -> Result<OutputTable, Error> {
    let config = args.config.config();
    let report = oracle::sample_distribution(config, args.reps, args.seed)?;
    let digits = args.digits;
    let mut meta = Meta::new("sample", digits).with_config(config.n1(), config.n2());
    meta.reps = Some(args.reps);
    meta.seed = Some(args.seed);
    let mut table = OutputTable::new(meta, "value");

    for stat in [StatKind::Min, StatKind::Max, StatKind::Total] {
        let exact = dist::pmf(config, stat);
        for entry in &report.frequencies[&stat] {
            let mut row = Row {
                stat: Some(stat.name().into()),
                value: Some(entry.value),
                ..Row::default()
            }
            .exact(&exact.prob(entry.value), digits);
            row.empirical = Some(float_number(entry.frequency, digits));
            row.std_error = Some(float_number(entry.std_error, digits));
            table.rows.push(row);
        }
    }
    let summary = dist::moments(config);
    let reason = format!("needs n > 2, got n = {}", config.n());
    for (name, exact) in summary.fields() {
        let Some(empirical) = report.moment(name) else {
            continue;
        };
        let mut row = quantity(name).maybe_exact(exact, digits, &reason);
        row.empirical = Some(float_number(empirical.estimate, digits));
        row.std_error = Some(float_number(empirical.std_error, digits));
        table.rows.push(row);
    }
    Ok(table)
}
