//! Text formats for datasets, pattern files, constraint files, weight tables,
//! tiling reports and candidate tiles.
//!
//! Every `parse_*` function works on an in-memory string; the `load_*`
//! wrappers read a file and attach its path to any error.

mod datasets;
mod patterns;
mod tiling;

use std::fs;
use std::io;
use std::path::{Path, PathBuf};

use thiserror::Error;

use crate::constraints::{parse_constraints, ConstraintError, ConstraintExpr, WeightTable};
use crate::pattern::{GraphDb, SequenceDb, TransactionDb};
use crate::tiling::{BinaryMatrix, Tile};

pub use datasets::{parse_graphs, parse_matrix, parse_sequences, parse_transactions, parse_weights};
pub use patterns::{
    decode_patterns, parse_patterns, patterns_to_string, DecodedPatterns, Elements, Flags, GraphElements, PatternOutput,
};
pub use tiling::{
    candidates_to_string, parse_candidates, parse_tiling_report, tiling_report_to_string, SelectionLine, TilingSummary,
};

/// A malformed line in some input; `line` is 1-based.
#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("line {line}: {message}")]
pub struct ParseError {
    pub line: usize,
    pub message: String,
}

impl ParseError {
    pub fn new(line: usize, message: impl Into<String>) -> Self {
        ParseError {
            line,
            message: message.into(),
        }
    }
}

#[derive(Debug, Error)]
pub enum FormatError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Parse { path: PathBuf, source: ParseError },
    #[error("{}: {source}", path.display())]
    Constraint { path: PathBuf, source: ConstraintError },
}

impl FormatError {
    pub fn path(&self) -> &Path {
        match self {
            FormatError::Io { path, .. } | FormatError::Parse { path, .. } | FormatError::Constraint { path, .. } => {
                path
            }
        }
    }
}

pub fn read_text(path: &Path) -> Result<String, FormatError> {
    fs::read_to_string(path).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}

fn load<T>(path: &Path, parse: impl FnOnce(&str) -> Result<T, ParseError>) -> Result<T, FormatError> {
    parse(&read_text(path)?).map_err(|source| FormatError::Parse {
        path: path.to_owned(),
        source,
    })
}

pub fn load_transactions(path: &Path) -> Result<TransactionDb, FormatError> {
    load(path, parse_transactions)
}

pub fn load_sequences(path: &Path) -> Result<SequenceDb, FormatError> {
    load(path, parse_sequences)
}

pub fn load_graphs(path: &Path) -> Result<GraphDb, FormatError> {
    load(path, parse_graphs)
}

pub fn load_matrix(path: &Path) -> Result<BinaryMatrix, FormatError> {
    load(path, parse_matrix)
}

pub fn load_weights(path: &Path) -> Result<WeightTable, FormatError> {
    load(path, parse_weights)
}

pub fn load_patterns(path: &Path) -> Result<DecodedPatterns, FormatError> {
    load(path, |text| decode_patterns(&parse_patterns(text)?))
}

pub fn load_candidates(path: &Path, matrix: &BinaryMatrix) -> Result<Vec<Tile>, FormatError> {
    load(path, |text| parse_candidates(text, matrix))
}

pub fn load_constraints(path: &Path) -> Result<ConstraintExpr, FormatError> {
    parse_constraints(&read_text(path)?).map_err(|source| FormatError::Constraint {
        path: path.to_owned(),
        source,
    })
}

pub fn write_text(path: &Path, text: &str) -> Result<(), FormatError> {
    fs::write(path, text).map_err(|source| FormatError::Io {
        path: path.to_owned(),
        source,
    })
}
