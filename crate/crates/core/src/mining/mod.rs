//! Frequent pattern discovery for itemsets, sequences and labelled graphs.
//!
//! Every miner returns its patterns in a canonical, thread-count independent
//! order with pids `1..=n` assigned in that order.

mod graph;
mod gspan;
mod itemset;
mod sequence;

use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use graph::{mine_frequent_graphs_general, mine_frequent_graphs_unique};
pub use gspan::{DfsCode, DfsEdge};
pub use itemset::mine_frequent_itemsets;
pub use sequence::mine_frequent_sequences;

use crate::pattern::PatternError;

#[derive(Debug, Error, Clone, PartialEq)]
pub enum MiningError {
    #[error("database is empty")]
    EmptyDatabase,
    #[error("invalid minimum support `{0}`: expected a positive integer or a fraction in (0, 1]")]
    InvalidMinSupport(String),
    #[error("{0} must be a positive integer")]
    InvalidLimit(&'static str),
    #[error("graph {gid} is not unique-labeled")]
    NotUniqueLabeled { gid: usize },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

/// Minimum support, either a transaction count or a fraction of the database.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum MinSupport {
    Absolute(usize),
    Relative(f64),
}

// Absorbs binary floating-point noise such as 0.7 * 10 = 7.000000000000001.
const RELATIVE_EPSILON: f64 = 1e-9;

impl MinSupport {
    pub fn absolute(count: usize) -> Result<Self, MiningError> {
        if count == 0 {
            return Err(MiningError::InvalidMinSupport(count.to_string()));
        }
        Ok(MinSupport::Absolute(count))
    }

    pub fn relative(fraction: f64) -> Result<Self, MiningError> {
        if !(fraction > 0.0 && fraction <= 1.0) {
            return Err(MiningError::InvalidMinSupport(fraction.to_string()));
        }
        Ok(MinSupport::Relative(fraction))
    }

    /// Effective absolute threshold for a database of `db_len` records:
    /// `ceil(fraction * db_len)`, never below 1.
    pub fn threshold(&self, db_len: usize) -> usize {
        match *self {
            MinSupport::Absolute(n) => n,
            MinSupport::Relative(f) => ((f * db_len as f64 - RELATIVE_EPSILON).ceil() as usize).max(1),
        }
    }
}

impl FromStr for MinSupport {
    type Err = MiningError;

    /// Integers are absolute counts; anything with a decimal point or exponent is relative.
    fn from_str(s: &str) -> Result<Self, Self::Err> {
        let s = s.trim();
        if !s.is_empty() && s.bytes().all(|b| b.is_ascii_digit()) {
            let n = s
                .parse::<usize>()
                .map_err(|_| MiningError::InvalidMinSupport(s.to_owned()))?;
            return MinSupport::absolute(n);
        }
        let f = s
            .parse::<f64>()
            .map_err(|_| MiningError::InvalidMinSupport(s.to_owned()))?;
        MinSupport::relative(f).map_err(|_| MiningError::InvalidMinSupport(s.to_owned()))
    }
}

impl fmt::Display for MinSupport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            MinSupport::Absolute(n) => write!(f, "{n}"),
            MinSupport::Relative(x) => write!(f, "{x}"),
        }
    }
}
