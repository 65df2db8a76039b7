//! Cross-checks closed forms against exhaustive enumeration.
//!
//! For every configuration with `n1 + n2 <= max_n` the sweep enumerates all
//! arrangements and demands exact agreement on the `(R1, R2)` joint, every
//! marginal, the `(R_m, R_M)` joint, the comparison probabilities, the
//! defined conditional means and variances, and the unconditional moments
//! together with their identities. A fixed errata section additionally
//! confirms that the uncorrected formulas in [`crate::dist::uncorrected`]
//! disagree with enumeration.

use std::fmt;

use crate::config::{Relation, RunsConfig, StatKind};
use crate::dist::{self, uncorrected, Pmf};
use crate::error::Error;
use crate::exact::{ExactProb, ExactRational};
use crate::oracle::{enumerate_with, EnumerationOptions, EnumerationReport};

/// Which formula a check runs against.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Variant {
    #[default]
    Corrected,
    Uncorrected,
}

/// Formula selection for the sweep. Switching any entry to
/// [`Variant::Uncorrected`] is expected to make the sweep fail.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub struct Formulas {
    pub pmf_max: Variant,
    pub cond_mean_min: Variant,
    pub cond_var_min: Variant,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct VerifyOptions {
    pub max_n: u32,
    pub enumeration: EnumerationOptions,
    pub formulas: Formulas,
}

impl VerifyOptions {
    pub fn new(max_n: u32) -> Self {
        Self {
            max_n,
            enumeration: EnumerationOptions::default(),
            formulas: Formulas::default(),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum Outcome {
    Pass {
        checks: usize,
    },
    Fail {
        checks: usize,
        mismatches: Vec<String>,
    },
    Skipped {
        reason: String,
    },
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConfigCheck {
    pub config: RunsConfig,
    pub outcome: Outcome,
}

impl fmt::Display for ConfigCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (n1, n2) = (self.config.n1(), self.config.n2());
        match &self.outcome {
            Outcome::Pass { checks } => write!(f, "PASS n1={n1} n2={n2} checks={checks}"),
            Outcome::Fail { checks, mismatches } => {
                write!(
                    f,
                    "FAIL n1={n1} n2={n2} checks={checks} mismatches={}",
                    mismatches.len()
                )?;
                for m in mismatches {
                    write!(f, "\n  {m}")?;
                }
                Ok(())
            }
            Outcome::Skipped { reason } => write!(f, "SKIP n1={n1} n2={n2} ({reason})"),
        }
    }
}

/// One negative check: the uncorrected formula must disagree with
/// enumeration while the corrected one agrees.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ErratumCheck {
    pub name: &'static str,
    pub config: RunsConfig,
    pub enumerated: ExactRational,
    pub corrected: ExactRational,
    pub uncorrected: ExactRational,
}

impl ErratumCheck {
    pub fn passed(&self) -> bool {
        self.corrected == self.enumerated && self.uncorrected != self.enumerated
    }
}

impl fmt::Display for ErratumCheck {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} erratum {} at {}: enumerated={} corrected={} uncorrected={}",
            if self.passed() { "PASS" } else { "FAIL" },
            self.name,
            self.config,
            self.enumerated,
            self.corrected,
            self.uncorrected,
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VerifyReport {
    pub configs: Vec<ConfigCheck>,
    pub errata: Vec<ErratumCheck>,
}

impl VerifyReport {
    pub fn passed(&self) -> bool {
        self.configs
            .iter()
            .all(|c| !matches!(c.outcome, Outcome::Fail { .. }))
            && self.errata.iter().all(ErratumCheck::passed)
    }

    pub fn failures(&self) -> impl Iterator<Item = &ConfigCheck> {
        self.configs
            .iter()
            .filter(|c| matches!(c.outcome, Outcome::Fail { .. }))
    }
}

struct Checker {
    checks: usize,
    mismatches: Vec<String>,
}

impl Checker {
    fn eq<T: PartialEq + fmt::Debug>(
        &mut self,
        what: impl fmt::Display,
        closed: &T,
        enumerated: &T,
    ) {
        self.checks += 1;
        if closed != enumerated {
            self.mismatches.push(format!(
                "{what}: closed form {closed:?} != enumeration {enumerated:?}"
            ));
        }
    }
}

fn pmf_max_under_test(config: RunsConfig, variant: Variant) -> Pmf {
    match variant {
        Variant::Corrected => dist::pmf_max(config),
        Variant::Uncorrected => {
            Pmf::from_entries(StatKind::Max, config, uncorrected::pmf_max(config))
        }
    }
}

fn cond_under_test(
    config: RunsConfig,
    stat: StatKind,
    rel: Relation,
    formulas: Formulas,
    variance: bool,
) -> Result<ExactRational, Error> {
    let corrected = if variance {
        dist::cond_var
    } else {
        dist::cond_mean
    };
    let variant = match (stat, variance) {
        (StatKind::Min, false) => formulas.cond_mean_min,
        (StatKind::Min, true) => formulas.cond_var_min,
        _ => Variant::Corrected,
    };
    match variant {
        Variant::Corrected => corrected(config, stat, rel),
        Variant::Uncorrected => {
            // keep the corrected guards so only the formula itself differs
            corrected(config, stat, rel)?;
            if variance {
                uncorrected::cond_var_min(config, rel)
            } else {
                uncorrected::cond_mean_min(config, rel)
            }
        }
    }
}

/// Compares every closed form with an enumeration report for one config.
pub fn check_config(report: &EnumerationReport, formulas: Formulas) -> Outcome {
    let config = report.config();
    let mut c = Checker {
        checks: 0,
        mismatches: Vec::new(),
    };

    let joint = dist::joint_pmf_r1r2(config);
    c.eq("joint (R1,R2)", joint.entries(), report.joint().entries());
    for (&(r1, r2), p) in report.joint().entries() {
        c.eq(
            format_args!("f({r1},{r2})"),
            &dist::joint_pmf(config, r1.into(), r2.into()),
            p,
        );
    }

    for stat in StatKind::ALL {
        let closed = match stat {
            StatKind::Max => pmf_max_under_test(config, formulas.pmf_max),
            _ => dist::pmf(config, stat),
        };
        c.eq(
            format_args!("pmf {stat}"),
            closed.entries(),
            report.pmf(stat).entries(),
        );
    }
    c.eq(
        "joint (R_m,R_M)",
        dist::joint_pmf_minmax(config).entries(),
        report.joint_minmax().entries(),
    );

    let probs = dist::comparison_probs(config);
    let enumerated = report.comparison_probs();
    for rel in Relation::ALL {
        c.eq(
            format_args!("P({rel})"),
            probs.get(rel),
            enumerated.get(rel),
        );
    }

    for stat in [StatKind::Max, StatKind::Min] {
        for rel in Relation::ALL {
            let oracle = report.conditional(stat, rel);
            for variance in [false, true] {
                let label = if variance { "Var" } else { "E" };
                match cond_under_test(config, stat, rel, formulas, variance) {
                    Ok(value) => {
                        let expected = oracle.map(|m| if variance { &m.var } else { &m.mean });
                        c.eq(
                            format_args!("{label}({stat}|{rel})"),
                            &Some(&value),
                            &expected,
                        );
                    }
                    Err(Error::ZeroProbabilityCondition { .. }) => {
                        c.eq(
                            format_args!("{label}({stat}|{rel}) event"),
                            &true,
                            &oracle.is_none(),
                        );
                    }
                    Err(Error::DomainTooSmall { .. }) => {}
                    Err(e) => c.mismatches.push(format!("{label}({stat}|{rel}): {e}")),
                }
            }
        }
    }

    let m = dist::moments(config);
    let (mean_min, var_min) = report.pmf(StatKind::Min).moments();
    let (mean_max, var_max) = report.pmf(StatKind::Max).moments();
    let (mean_total, var_total) = report.pmf(StatKind::Total).moments();
    c.eq("E(R_m)", &m.mean_min, &mean_min);
    c.eq("E(R_M)", &m.mean_max, &mean_max);
    c.eq("E(R)", &m.mean_total, &mean_total);
    c.eq("Var(R)", &m.var_total, &var_total);
    c.eq(
        "Cov(R_m,R_M)",
        &m.cov_min_max,
        &report.joint_minmax().covariance(),
    );
    if let (Some(vmin), Some(vmax)) = (&m.var_min, &m.var_max) {
        c.eq("Var(R_m)", vmin, &var_min);
        c.eq("Var(R_M)", vmax, &var_max);
        let two = ExactRational::from_integer(2);
        c.eq(
            "Var(R) = Var(R_m)+Var(R_M)+2Cov",
            &m.var_total,
            &(vmin + vmax + &two * &m.cov_min_max),
        );
    }
    c.eq(
        "E(R) = E(R_m)+E(R_M)",
        &m.mean_total,
        &(&m.mean_min + &m.mean_max),
    );

    if c.mismatches.is_empty() {
        Outcome::Pass { checks: c.checks }
    } else {
        Outcome::Fail {
            checks: c.checks,
            mismatches: c.mismatches,
        }
    }
}

/// Closed-form identities for one configuration, without enumeration.
///
/// Checks `Var(R) = Var(R_m) + Var(R_M) + 2 Cov`, `E(R) = E(R_m) + E(R_M)`,
/// the total-expectation and total-variance decompositions of `R_m` and
/// `R_M` over the comparison events, and symmetry under swapping the
/// sample sizes. Returns the mismatches; empty means all hold.
pub fn identity_checks(config: RunsConfig) -> Result<Vec<String>, Error> {
    let mut c = Checker {
        checks: 0,
        mismatches: Vec::new(),
    };
    let m = dist::moments(config);
    let two = ExactRational::from_integer(2);
    c.eq(
        "E(R) = E(R_m)+E(R_M)",
        &m.mean_total,
        &(&m.mean_min + &m.mean_max),
    );
    if let (Some(vmin), Some(vmax)) = (&m.var_min, &m.var_max) {
        c.eq(
            "Var(R) = Var(R_m)+Var(R_M)+2Cov",
            &m.var_total,
            &(vmin + vmax + &two * &m.cov_min_max),
        );
    }

    let probs = dist::comparison_probs(config);
    c.eq(
        "sum P(rel)",
        &Relation::ALL
            .iter()
            .map(|&r| probs.get(r))
            .sum::<ExactRational>(),
        &ExactRational::one(),
    );
    if config.n() > 3 {
        for (stat, mean, var) in [
            (StatKind::Min, &m.mean_min, m.var_min.as_ref()),
            (StatKind::Max, &m.mean_max, m.var_max.as_ref()),
        ] {
            let mut total_mean = ExactRational::zero();
            let mut within = ExactRational::zero();
            let mut parts = Vec::new();
            for rel in Relation::ALL {
                let p = probs.get(rel);
                if p.is_zero() {
                    continue;
                }
                let cm = dist::cond_mean(config, stat, rel)?;
                let cv = dist::cond_var(config, stat, rel)?;
                total_mean += p * &cm;
                within += p * &cv;
                parts.push((p.clone(), cm));
            }
            let between: ExactRational = parts.iter().map(|(p, cm)| p * (cm - mean).square()).sum();
            c.eq(
                format_args!("E({stat}) by total expectation"),
                mean,
                &total_mean,
            );
            c.eq(
                format_args!("Var({stat}) by total variance"),
                &var.cloned(),
                &Some(within + between),
            );
        }
    }

    let swapped = config.swapped();
    let ms = dist::moments(swapped);
    c.eq(
        "moments symmetric",
        &(
            &m.mean_min,
            &m.var_min,
            &m.mean_max,
            &m.var_max,
            &m.var_total,
            &m.cov_min_max,
        ),
        &(
            &ms.mean_min,
            &ms.var_min,
            &ms.mean_max,
            &ms.var_max,
            &ms.var_total,
            &ms.cov_min_max,
        ),
    );
    let ps = dist::comparison_probs(swapped);
    c.eq(
        "P(R1>R2) symmetric",
        probs.get(Relation::Gt),
        ps.get(Relation::Lt),
    );
    c.eq(
        "P(R1=R2) symmetric",
        probs.get(Relation::Eq),
        ps.get(Relation::Eq),
    );
    for stat in [StatKind::Min, StatKind::Max, StatKind::Total] {
        c.eq(
            format_args!("pmf {stat} symmetric"),
            dist::pmf(config, stat).entries(),
            dist::pmf(swapped, stat).entries(),
        );
    }
    c.eq(
        "pmf r1 <-> r2",
        dist::pmf_r1(config).entries(),
        dist::pmf_r2(swapped).entries(),
    );
    for stat in [StatKind::Min, StatKind::Max] {
        for (rel, mirror) in [(Relation::Gt, Relation::Lt), (Relation::Eq, Relation::Eq)] {
            let a = dist::cond_mean(config, stat, rel).ok();
            let b = dist::cond_mean(swapped, stat, mirror).ok();
            c.eq(format_args!("E({stat}|{rel}) symmetric"), &a, &b);
            let a = dist::cond_var(config, stat, rel).ok();
            let b = dist::cond_var(swapped, stat, mirror).ok();
            c.eq(format_args!("Var({stat}|{rel}) symmetric"), &a, &b);
        }
    }
    Ok(c.mismatches)
}

/// Negative checks at `(3,2)` and `(4,3)`.
pub fn errata_checks() -> Result<Vec<ErratumCheck>, Error> {
    let mut out = Vec::new();
    for (n1, n2) in [(3, 2), (4, 3)] {
        let config = RunsConfig::new(n1, n2)?;
        let report = enumerate_with(config, EnumerationOptions::default())?;
        let enumerated_max = report.pmf(StatKind::Max);
        let uncorrected_max = uncorrected::pmf_max(config);
        out.push(ErratumCheck {
            name: "P(R_M=1)",
            config,
            enumerated: enumerated_max.prob(1),
            corrected: dist::pmf_max(config).prob(1),
            uncorrected: uncorrected_max
                .get(&1)
                .cloned()
                .unwrap_or_else(ExactProb::zero),
        });
        let oracle = report
            .conditional(StatKind::Min, Relation::Gt)
            .expect("R1 > R2 is possible when n1 >= 2");
        out.push(ErratumCheck {
            name: "E(R_m|R1>R2)",
            config,
            enumerated: oracle.mean.clone(),
            corrected: dist::cond_mean(config, StatKind::Min, Relation::Gt)?,
            uncorrected: uncorrected::cond_mean_min(config, Relation::Gt)?,
        });
        out.push(ErratumCheck {
            name: "Var(R_m|R1>R2)",
            config,
            enumerated: oracle.var.clone(),
            corrected: dist::cond_var(config, StatKind::Min, Relation::Gt)?,
            uncorrected: uncorrected::cond_var_min(config, Relation::Gt)?,
        });
    }
    Ok(out)
}

/// Runs the full sweep. Configurations over the enumeration budget are
/// reported as skipped.
pub fn run_verification(options: VerifyOptions) -> Result<VerifyReport, Error> {
    let configs = RunsConfig::all_up_to(options.max_n)
        .into_iter()
        .map(|config| {
            let outcome = match enumerate_with(config, options.enumeration) {
                Ok(report) => check_config(&report, options.formulas),
                Err(e @ Error::BudgetExceeded { .. }) => Outcome::Skipped {
                    reason: e.to_string(),
                },
                Err(e) => return Err(e),
            };
            Ok(ConfigCheck { config, outcome })
        })
        .collect::<Result<Vec<_>, Error>>()?;
    Ok(VerifyReport {
        configs,
        errata: errata_checks()?,
    })
}
