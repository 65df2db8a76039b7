use thiserror::Error;

use crate::config::{Relation, StatKind};

#[derive(Debug, Error)]
pub enum Error {
    #[error("invalid configuration n1={n1}, n2={n2}: both sample sizes must be at least 1")]
    InvalidConfig { n1: u32, n2: u32 },
    #[error("division by zero")]
    DivisionByZero,
    #[error("parse error: {0}")]
    Parse(String),
    #[error("conditioning event {rel} has probability zero")]
    ZeroProbabilityCondition { rel: Relation },
    #[error("closed form needs n > {min_exclusive}, got n = {n}")]
    DomainTooSmall { n: u32, min_exclusive: u32 },
    #[error("statistic {0} is not supported by this operation")]
    UnsupportedStat(StatKind),
    #[error("empty label sequence")]
    EmptySequence,
    #[error("symbol {symbol:?} at position {position} is neither of the two designated symbols")]
    ForeignSymbol { symbol: char, position: usize },
    #[error("enumeration would visit {count} sequences, over the budget of {budget}")]
    BudgetExceeded { count: String, budget: u64 },
    #[error("cross-sample tie: value {value} appears in both samples")]
    CrossSampleTie { value: f64 },
    #[error("sample is empty")]
    EmptySample,
    #[error("sample contains a non-finite value")]
    NonFiniteValue,
    #[error("sequence contains only one of the two labels")]
    DegenerateSequence,
}

pub type Result<T, E = Error> = std::result::Result<T, E>;
