//! Exact distributions and moments for the order statistics of two-sample
//! runs counts.
//!
//! Arrange `n1` x's and `n2` y's uniformly at random and let `R1`, `R2` be
//! the numbers of runs of each. This crate computes, as exact rationals,
//! the joint pmf of `(R1, R2)`, the pmfs of `R_M = max(R1, R2)`,
//! `R_m = min(R1, R2)` and `R = R1 + R2`, their conditional and
//! unconditional moments, and exact p-values for runs tests on data.
//!
//! ```
//! use runorder::{dist, ExactRational, RunsConfig};
//!
//! let config = RunsConfig::new(3, 2).unwrap();
//! let max = dist::pmf_max(config);
//! assert_eq!(max.prob(2), ExactRational::new(7, 10));
//! assert_eq!(dist::moments(config).cov_min_max, ExactRational::new(3, 20));
//! ```
//!
//! [`oracle`] re-derives everything by brute-force enumeration and
//! [`verify`] checks the two against each other.

pub mod cli;
pub mod config;
pub mod dist;
pub mod error;
pub mod exact;
pub mod oracle;
pub mod output;
pub mod verify;

pub use config::{Relation, RunsConfig, StatKind};
pub use error::{Error, Result};
pub use exact::{binomial, ExactProb, ExactRational};
