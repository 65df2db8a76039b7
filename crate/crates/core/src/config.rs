use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::Error;

/// Sample sizes of the two label types.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
pub struct RunsConfig {
    n1: u32,
    n2: u32,
}

impl RunsConfig {
    pub fn new(n1: u32, n2: u32) -> Result<Self, Error> {
        if n1 == 0 || n2 == 0 {
            return Err(Error::InvalidConfig { n1, n2 });
        }
        Ok(Self { n1, n2 })
    }

    /// Number of x-type elements.
    pub fn n1(&self) -> u32 {
        self.n1
    }

    /// Number of y-type elements.
    pub fn n2(&self) -> u32 {
        self.n2
    }

    pub fn n(&self) -> u32 {
        self.n1 + self.n2
    }

    /// The configuration with the roles of x and y exchanged.
    pub fn swapped(&self) -> Self {
        Self {
            n1: self.n2,
            n2: self.n1,
        }
    }

    /// All configurations with `n1 + n2 <= max_n`, ordered by total size
    /// and then by `n1`.
    pub fn all_up_to(max_n: u32) -> Vec<Self> {
        (2..=max_n)
            .flat_map(|n| (1..n).map(move |n1| Self { n1, n2: n - n1 }))
            .collect()
    }
}

impl fmt::Display for RunsConfig {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "({},{})", self.n1, self.n2)
    }
}

/// Which run statistic a distribution describes.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum StatKind {
    /// Runs of x.
    R1,
    /// Runs of y.
    R2,
    /// Total runs `R1 + R2`.
    Total,
    /// `max(R1, R2)`.
    Max,
    /// `min(R1, R2)`.
    Min,
}

impl StatKind {
    pub const ALL: [StatKind; 5] = [Self::R1, Self::R2, Self::Total, Self::Max, Self::Min];

    /// Evaluates the statistic on a pair of run counts.
    pub fn of(self, r1: u32, r2: u32) -> u32 {
        match self {
            Self::R1 => r1,
            Self::R2 => r2,
            Self::Total => r1 + r2,
            Self::Max => r1.max(r2),
            Self::Min => r1.min(r2),
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::R1 => "r1",
            Self::R2 => "r2",
            Self::Total => "total",
            Self::Max => "max",
            Self::Min => "min",
        }
    }
}

impl fmt::Display for StatKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.name())
    }
}

impl FromStr for StatKind {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        Self::ALL
            .into_iter()
            .find(|k| k.name() == s)
            .ok_or_else(|| Error::Parse(format!("unknown statistic {s:?}")))
    }
}

/// Conditioning events `{R1 > R2}`, `{R1 < R2}`, `{R1 = R2}`; together they
/// partition the sample space.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum Relation {
    Gt,
    Lt,
    Eq,
}

impl Relation {
    pub const ALL: [Relation; 3] = [Self::Gt, Self::Lt, Self::Eq];

    pub fn holds(self, r1: u32, r2: u32) -> bool {
        match self {
            Self::Gt => r1 > r2,
            Self::Lt => r1 < r2,
            Self::Eq => r1 == r2,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Self::Gt => "gt",
            Self::Lt => "lt",
            Self::Eq => "eq",
        }
    }
}

impl fmt::Display for Relation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let s = match self {
            Self::Gt => "R1>R2",
            Self::Lt => "R1<R2",
            Self::Eq => "R1=R2",
        };
        f.write_str(s)
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn rejects_empty_samples() {
        assert!(RunsConfig::new(0, 3).is_err());
        assert!(RunsConfig::new(3, 0).is_err());
        assert_eq!(RunsConfig::new(3, 2).unwrap().n(), 5);
    }

    #[test]
    fn config_sweep_counts() {
        assert_eq!(RunsConfig::all_up_to(14).len(), 91);
        assert_eq!(
            RunsConfig::all_up_to(2),
            vec![RunsConfig::new(1, 1).unwrap()]
        );
        assert!(RunsConfig::all_up_to(1).is_empty());
    }

    #[test]
    fn stat_evaluation() {
        assert_eq!(StatKind::Max.of(2, 3), 3);
        assert_eq!(StatKind::Min.of(2, 3), 2);
        assert_eq!(StatKind::Total.of(2, 3), 5);
        assert_eq!("min".parse::<StatKind>().unwrap(), StatKind::Min);
        assert!("median".parse::<StatKind>().is_err());
    }

    #[test]
    fn relations_partition() {
        for (r1, r2) in [(1, 2), (2, 2), (3, 2)] {
            let hits = Relation::ALL.iter().filter(|rel| rel.holds(r1, r2)).count();
            assert_eq!(hits, 1);
        }
    }
}
