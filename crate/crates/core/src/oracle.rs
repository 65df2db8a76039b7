//! Ground truth by brute force.
//!
//! [`enumerate_distribution`] visits every one of the `C(n, n1)`
//! arrangements of `n1` x's and `n2` y's, counts runs in each, and turns
//! the integer tallies into exact distributions. [`sample_distribution`]
//! draws uniformly random arrangements for configurations too large to
//! enumerate.

use std::collections::BTreeMap;
use std::thread;

use num_bigint::BigUint;
use num_traits::ToPrimitive;
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::config::{Relation, RunsConfig, StatKind};
use crate::dist::{ComparisonProbs, JointKind, JointPmf, Pmf};
use crate::error::Error;
use crate::exact::{binomial, ExactProb, ExactRational};

/// Default cap on the number of arrangements enumerated.
pub const DEFAULT_BUDGET: u64 = 10_000_000;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub enum Label {
    X,
    Y,
}

impl Label {
    pub fn flipped(self) -> Self {
        match self {
            Label::X => Label::Y,
            Label::Y => Label::X,
        }
    }
}

/// Run counts observed in one sequence.
///
/// When only one label is present the absent one has zero runs, so
/// `r_min = 0` and `r_max = 1`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct RunStats {
    pub r1: u32,
    pub r2: u32,
    pub r: u32,
    pub r_min: u32,
    pub r_max: u32,
}

impl RunStats {
    pub fn get(&self, stat: StatKind) -> u32 {
        stat.of(self.r1, self.r2)
    }
}

/// Counts maximal blocks of each label.
pub fn count_runs(sequence: &[Label]) -> Result<RunStats, Error> {
    let first = *sequence.first().ok_or(Error::EmptySequence)?;
    let (mut r1, mut r2) = (0u32, 0u32);
    let mut bump = |label: Label| match label {
        Label::X => r1 += 1,
        Label::Y => r2 += 1,
    };
    bump(first);
    for pair in sequence.windows(2) {
        if pair[0] != pair[1] {
            bump(pair[1]);
        }
    }
    Ok(RunStats {
        r1,
        r2,
        r: r1 + r2,
        r_min: r1.min(r2),
        r_max: r1.max(r2),
    })
}

/// Parses a string of two designated symbols into labels, e.g. `"xxyyx"`
/// with symbols `('x', 'y')`. Whitespace is ignored.
pub fn parse_labels(text: &str, x: char, y: char) -> Result<Vec<Label>, Error> {
    let labels = text
        .chars()
        .enumerate()
        .filter(|(_, c)| !c.is_whitespace())
        .map(|(position, c)| match c {
            c if c == x => Ok(Label::X),
            c if c == y => Ok(Label::Y),
            symbol => Err(Error::ForeignSymbol { symbol, position }),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if labels.is_empty() {
        return Err(Error::EmptySequence);
    }
    Ok(labels)
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct EnumerationOptions {
    /// Maximum number of arrangements to visit.
    pub budget: u64,
    /// Number of threads; the rank range is split into this many
    /// contiguous chunks.
    pub workers: usize,
}

impl Default for EnumerationOptions {
    fn default() -> Self {
        Self {
            budget: DEFAULT_BUDGET,
            workers: 1,
        }
    }
}

/// Conditional mean and variance of a statistic on one comparison event.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ConditionalMoments {
    pub mean: ExactRational,
    pub var: ExactRational,
}

/// Exact distributions obtained by exhaustive enumeration.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumerationReport {
    config: RunsConfig,
    counts: BTreeMap<(u32, u32), u64>,
    sequence_count: u64,
    joint: JointPmf,
    pmfs: BTreeMap<StatKind, Pmf>,
    conditional: BTreeMap<(StatKind, Relation), Option<ConditionalMoments>>,
}

impl EnumerationReport {
    fn from_counts(config: RunsConfig, counts: BTreeMap<(u32, u32), u64>) -> Self {
        let sequence_count: u64 = counts.values().sum();
        let denom = BigUint::from(sequence_count);
        let joint = JointPmf::from_entries(
            JointKind::R1R2,
            config,
            counts
                .iter()
                .map(|(&key, &c)| (key, ExactProb::ratio(BigUint::from(c), denom.clone()))),
        );
        let pmfs = StatKind::ALL
            .into_iter()
            .map(|stat| {
                (
                    stat,
                    joint.derived(stat).expect("r1r2 joint derives every stat"),
                )
            })
            .collect();
        let conditional = StatKind::ALL
            .into_iter()
            .flat_map(|stat| Relation::ALL.into_iter().map(move |rel| (stat, rel)))
            .map(|(stat, rel)| {
                let moments = joint
                    .conditional_moments(stat, rel)
                    .map(|(mean, var)| ConditionalMoments { mean, var });
                ((stat, rel), moments)
            })
            .collect();
        Self {
            config,
            counts,
            sequence_count,
            joint,
            pmfs,
            conditional,
        }
    }

    pub fn config(&self) -> RunsConfig {
        self.config
    }

    /// Number of arrangements visited, `C(n, n1)`.
    pub fn sequence_count(&self) -> u64 {
        self.sequence_count
    }

    /// Raw tallies of `(r1, r2)`.
    pub fn counts(&self) -> &BTreeMap<(u32, u32), u64> {
        &self.counts
    }

    /// Joint pmf of `(R1, R2)`.
    pub fn joint(&self) -> &JointPmf {
        &self.joint
    }

    pub fn joint_minmax(&self) -> JointPmf {
        self.joint.to_minmax()
    }

    pub fn pmf(&self, stat: StatKind) -> &Pmf {
        &self.pmfs[&stat]
    }

    pub fn comparison_probs(&self) -> ComparisonProbs {
        let get = |rel| self.joint.relation_prob(rel).expect("r1r2 joint");
        ComparisonProbs {
            eq: get(Relation::Eq),
            gt: get(Relation::Gt),
            lt: get(Relation::Lt),
        }
    }

    /// `None` when the conditioning event never occurs.
    pub fn conditional(&self, stat: StatKind, rel: Relation) -> Option<&ConditionalMoments> {
        self.conditional[&(stat, rel)].as_ref()
    }

    pub fn conditional_table(&self) -> &BTreeMap<(StatKind, Relation), Option<ConditionalMoments>> {
        &self.conditional
    }
}

/// Enumerates with the default budget on a single thread.
pub fn enumerate_distribution(config: RunsConfig) -> Result<EnumerationReport, Error> {
    enumerate_with(config, EnumerationOptions::default())
}

pub fn enumerate_with(
    config: RunsConfig,
    options: EnumerationOptions,
) -> Result<EnumerationReport, Error> {
    let total_big = binomial(config.n().into(), config.n1().into());
    let total = match total_big.to_u64() {
        Some(t) if t <= options.budget => t,
        _ => {
            return Err(Error::BudgetExceeded {
                count: total_big.to_string(),
                budget: options.budget,
            })
        }
    };
    let workers = options.workers.max(1) as u64;
    let chunk = total.div_ceil(workers);
    let ranges: Vec<(u64, u64)> = (0..workers)
        .map(|w| (w * chunk, ((w + 1) * chunk).min(total)))
        .filter(|(lo, hi)| lo < hi)
        .collect();

    let partials: Vec<BTreeMap<(u32, u32), u64>> = if ranges.len() <= 1 {
        ranges
            .iter()
            .map(|&(lo, hi)| count_range(config, lo, hi))
            .collect()
    } else {
        thread::scope(|scope| {
            let handles: Vec<_> = ranges
                .iter()
                .map(|&(lo, hi)| scope.spawn(move || count_range(config, lo, hi)))
                .collect();
            handles
                .into_iter()
                .map(|h| h.join().expect("enumeration worker panicked"))
                .collect()
        })
    };

    let mut counts = BTreeMap::new();
    for partial in partials {
        for (key, c) in partial {
            *counts.entry(key).or_insert(0u64) += c;
        }
    }
    Ok(EnumerationReport::from_counts(config, counts))
}

fn binom_u64(a: u32, b: u32) -> u64 {
    binomial(a.into(), b.into())
        .to_u64()
        .expect("binomial bounded by the enumeration budget")
}

/// The `rank`-th k-subset of `0..n` in lexicographic order.
fn unrank_combination(n: u32, k: u32, mut rank: u64) -> Vec<u32> {
    let mut positions = Vec::with_capacity(k as usize);
    let mut next = 0u32;
    for slot in 0..k {
        loop {
            // subsets whose slot-th element is `next`
            let with_next = binom_u64(n - next - 1, k - slot - 1);
            if rank < with_next {
                break;
            }
            rank -= with_next;
            next += 1;
        }
        positions.push(next);
        next += 1;
    }
    positions
}

/// Advances to the next k-subset in lexicographic order; false at the end.
fn next_combination(positions: &mut [u32], n: u32) -> bool {
    let k = positions.len() as u32;
    let Some(i) = (0..k).rev().find(|&i| positions[i as usize] < n - k + i) else {
        return false;
    };
    positions[i as usize] += 1;
    for j in i + 1..k {
        positions[j as usize] = positions[j as usize - 1] + 1;
    }
    true
}

fn count_range(config: RunsConfig, lo: u64, hi: u64) -> BTreeMap<(u32, u32), u64> {
    let (n, k) = (config.n(), config.n1());
    let mut positions = unrank_combination(n, k, lo);
    let mut sequence = vec![Label::Y; n as usize];
    let mut counts = BTreeMap::new();
    for _ in lo..hi {
        sequence.fill(Label::Y);
        for &p in &positions {
            sequence[p as usize] = Label::X;
        }
        let stats = count_runs(&sequence).expect("nonempty");
        *counts.entry((stats.r1, stats.r2)).or_insert(0u64) += 1;
        next_combination(&mut positions, n);
    }
    counts
}

/// Empirical frequency of one statistic value.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct FrequencyEntry {
    pub value: u32,
    pub count: u64,
    pub frequency: f64,
    /// Binomial standard error `sqrt(p (1 - p) / reps)`.
    pub std_error: f64,
}

/// Empirical moment with its large-sample standard error.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct EmpiricalMoment {
    pub name: String,
    pub estimate: f64,
    pub std_error: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct SampleReport {
    pub config: RunsConfig,
    pub reps: u64,
    pub seed: u64,
    pub frequencies: BTreeMap<StatKind, Vec<FrequencyEntry>>,
    /// Named like the fields of [`crate::dist::MomentSummary`].
    pub moments: Vec<EmpiricalMoment>,
}

impl SampleReport {
    pub fn moment(&self, name: &str) -> Option<&EmpiricalMoment> {
        self.moments.iter().find(|m| m.name == name)
    }

    pub fn frequency(&self, stat: StatKind, value: u32) -> Option<&FrequencyEntry> {
        self.frequencies
            .get(&stat)?
            .iter()
            .find(|e| e.value == value)
    }
}

/// Monte Carlo estimate from `reps` uniformly shuffled arrangements.
///
/// The stream is a ChaCha8 generator seeded from `seed`; the same inputs
/// always produce the same report.
pub fn sample_distribution(
    config: RunsConfig,
    reps: u64,
    seed: u64,
) -> Result<SampleReport, Error> {
    if reps == 0 {
        return Err(Error::Parse("reps must be at least 1".into()));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut sequence: Vec<Label> = std::iter::repeat_n(Label::X, config.n1() as usize)
        .chain(std::iter::repeat_n(Label::Y, config.n2() as usize))
        .collect();
    let mut counts: BTreeMap<(u32, u32), u64> = BTreeMap::new();
    for _ in 0..reps {
        sequence.shuffle(&mut rng);
        let stats = count_runs(&sequence)?;
        *counts.entry((stats.r1, stats.r2)).or_insert(0) += 1;
    }

    let reps_f = reps as f64;
    let frequencies = StatKind::ALL
        .into_iter()
        .map(|stat| {
            let mut tally: BTreeMap<u32, u64> = BTreeMap::new();
            for (&(r1, r2), &c) in &counts {
                *tally.entry(stat.of(r1, r2)).or_insert(0) += c;
            }
            let entries = tally
                .into_iter()
                .map(|(value, count)| {
                    let p = count as f64 / reps_f;
                    FrequencyEntry {
                        value,
                        count,
                        frequency: p,
                        std_error: (p * (1.0 - p) / reps_f).sqrt(),
                    }
                })
                .collect();
            (stat, entries)
        })
        .collect();

    let weighted = |f: &dyn Fn(f64, f64) -> f64| -> f64 {
        counts
            .iter()
            .map(|(&(r1, r2), &c)| c as f64 * f(r1 as f64, r2 as f64))
            .sum::<f64>()
            / reps_f
    };
    let min = |a: f64, b: f64| a.min(b);
    let max = |a: f64, b: f64| a.max(b);
    let total = |a: f64, b: f64| a + b;

    let mut moments = Vec::new();
    for (stat_name, g) in [
        ("min", &min as &dyn Fn(f64, f64) -> f64),
        ("max", &max),
        ("total", &total),
    ] {
        let mean = weighted(&|a, b| g(a, b));
        let var = weighted(&|a, b| (g(a, b) - mean).powi(2));
        let m4 = weighted(&|a, b| (g(a, b) - mean).powi(4));
        moments.push(EmpiricalMoment {
            name: format!("mean_{stat_name}"),
            estimate: mean,
            std_error: (var / reps_f).sqrt(),
        });
        moments.push(EmpiricalMoment {
            name: format!("var_{stat_name}"),
            estimate: var,
            std_error: ((m4 - var * var).max(0.0) / reps_f).sqrt(),
        });
    }
    let mean_min = weighted(&min);
    let mean_max = weighted(&max);
    let cov = weighted(&|a, b| (min(a, b) - mean_min) * (max(a, b) - mean_max));
    let cross_sq = weighted(&|a, b| ((min(a, b) - mean_min) * (max(a, b) - mean_max)).powi(2));
    moments.push(EmpiricalMoment {
        name: "cov_min_max".into(),
        estimate: cov,
        std_error: ((cross_sq - cov * cov).max(0.0) / reps_f).sqrt(),
    });

    Ok(SampleReport {
        config,
        reps,
        seed,
        frequencies,
        moments,
    })
}
