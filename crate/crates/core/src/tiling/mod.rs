//! Tiles over binary matrices and the selection of tilings whose error
//! (ones left uncovered plus zeros covered) fits a budget.
//!
//! Row and column indices are 0-based throughout.

mod bits;
mod candidates;
mod select;

use std::collections::BTreeSet;
use std::fmt;
use std::str::FromStr;

use thiserror::Error;

pub use candidates::generate_candidates;
pub use select::{
    exact_select, greedy_select, ExactOutcome, GreedyOutcome, SearchMode, TileSelection, TilingProblem,
    DEFAULT_EXACT_BOUND,
};

use crate::pattern::{cover_itemset, Itemset, PatternError, TransactionDb};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum TilingError {
    #[error("matrix needs at least one row and one column")]
    EmptyMatrix,
    #[error("row {row} has {found} cells, expected {expected}")]
    Ragged { row: usize, expected: usize, found: usize },
    #[error("tile needs at least one row and one column")]
    EmptyTile,
    #[error("index ({row}, {col}) is outside the {rows}x{cols} matrix")]
    OutOfRange {
        row: usize,
        col: usize,
        rows: usize,
        cols: usize,
    },
    #[error("no row contains every column of the itemset")]
    EmptyCover,
    #[error("confidence threshold {0} is outside (0, 1]")]
    InvalidTau(f64),
    #[error("{n} candidates exceed the exact-search bound of {bound}")]
    TooManyCandidates { n: usize, bound: usize },
    #[error("unknown {what} `{value}`")]
    UnknownName { what: &'static str, value: String },
    #[error(transparent)]
    Pattern(#[from] PatternError),
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct BinaryMatrix {
    rows: usize,
    cols: usize,
    cells: Vec<bool>,
}

impl BinaryMatrix {
    pub fn new(rows: Vec<Vec<bool>>) -> Result<Self, TilingError> {
        let cols = rows.first().map_or(0, Vec::len);
        if cols == 0 {
            return Err(TilingError::EmptyMatrix);
        }
        for (i, r) in rows.iter().enumerate() {
            if r.len() != cols {
                return Err(TilingError::Ragged {
                    row: i,
                    expected: cols,
                    found: r.len(),
                });
            }
        }
        Ok(BinaryMatrix {
            rows: rows.len(),
            cols,
            cells: rows.into_iter().flatten().collect(),
        })
    }

    /// Row `t` is transaction `t + 1`; column `j` is the item with symbol id `j`.
    pub fn from_transactions(db: &TransactionDb) -> Result<Self, TilingError> {
        let cols = db.item_count();
        let rows = db
            .transactions()
            .iter()
            .map(|t| {
                let mut row = vec![false; cols];
                for item in t.items() {
                    row[item.index()] = true;
                }
                row
            })
            .collect();
        BinaryMatrix::new(rows)
    }

    pub fn rows(&self) -> usize {
        self.rows
    }

    pub fn cols(&self) -> usize {
        self.cols
    }

    pub fn get(&self, row: usize, col: usize) -> bool {
        self.cells[row * self.cols + col]
    }

    pub fn row(&self, row: usize) -> &[bool] {
        &self.cells[row * self.cols..(row + 1) * self.cols]
    }

    pub fn count_ones(&self) -> usize {
        self.cells.iter().filter(|&&c| c).count()
    }
}

/// A rectangle `rows x cols` together with the data ones it contains.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Tile {
    id: usize,
    rows: Vec<usize>,
    cols: Vec<usize>,
    ones: Vec<(usize, usize)>,
}

impl Tile {
    /// Sorts and deduplicates the index sets and collects the ones inside.
    pub fn new(
        matrix: &BinaryMatrix,
        id: usize,
        mut rows: Vec<usize>,
        mut cols: Vec<usize>,
    ) -> Result<Self, TilingError> {
        rows.sort_unstable();
        rows.dedup();
        cols.sort_unstable();
        cols.dedup();
        if rows.is_empty() || cols.is_empty() {
            return Err(TilingError::EmptyTile);
        }
        let (&r, &c) = (rows.last().unwrap(), cols.last().unwrap());
        if r >= matrix.rows() || c >= matrix.cols() {
            return Err(TilingError::OutOfRange {
                row: r,
                col: c,
                rows: matrix.rows(),
                cols: matrix.cols(),
            });
        }
        let ones = rows
            .iter()
            .flat_map(|&r| cols.iter().map(move |&c| (r, c)))
            .filter(|&(r, c)| matrix.get(r, c))
            .collect();
        Ok(Tile { id, rows, cols, ones })
    }

    pub fn id(&self) -> usize {
        self.id
    }

    pub fn with_id(mut self, id: usize) -> Self {
        self.id = id;
        self
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn cols(&self) -> &[usize] {
        &self.cols
    }

    /// Data ones inside the rectangle, row-major.
    pub fn ones(&self) -> &[(usize, usize)] {
        &self.ones
    }

    pub fn cell_count(&self) -> usize {
        self.rows.len() * self.cols.len()
    }

    pub fn zeros_inside(&self) -> usize {
        self.cell_count() - self.ones.len()
    }
}

/// The tile of a column set: every row holding a one in each column.
pub fn tile_of(matrix: &BinaryMatrix, cols: &[usize]) -> Result<Tile, TilingError> {
    if let Some(&c) = cols.iter().find(|&&c| c >= matrix.cols()) {
        return Err(TilingError::OutOfRange {
            row: 0,
            col: c,
            rows: matrix.rows(),
            cols: matrix.cols(),
        });
    }
    if cols.is_empty() {
        return Err(TilingError::EmptyTile);
    }
    let rows: Vec<usize> = (0..matrix.rows())
        .filter(|&r| cols.iter().all(|&c| matrix.get(r, c)))
        .collect();
    if rows.is_empty() {
        return Err(TilingError::EmptyCover);
    }
    Tile::new(matrix, 0, rows, cols.to_vec())
}

/// The tile of an itemset over [`BinaryMatrix::from_transactions`]: rows are
/// `tid - 1`, columns are symbol ids.
pub fn tile_of_itemset(db: &TransactionDb, itemset: &Itemset) -> Result<Tile, TilingError> {
    let cover = cover_itemset(db, itemset)?;
    if cover.is_empty() {
        return Err(TilingError::EmptyCover);
    }
    let matrix = BinaryMatrix::from_transactions(db)?;
    Tile::new(
        &matrix,
        0,
        cover.into_iter().map(|t| t - 1).collect(),
        itemset.items().iter().map(|i| i.index()).collect(),
    )
}

/// Number of distinct data ones covered by the tiles.
pub fn area(tiles: &[Tile]) -> usize {
    tiles.iter().flat_map(|t| t.ones.iter()).collect::<BTreeSet<_>>().len()
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub enum ErrorMode {
    /// Every one outside the tiling counts.
    Full,
    /// Only ones inside some candidate tile count as uncovered; the rest
    /// cannot be covered by any selection and are left out.
    #[default]
    Coverable,
}

impl ErrorMode {
    pub fn as_str(self) -> &'static str {
        match self {
            ErrorMode::Full => "full",
            ErrorMode::Coverable => "coverable",
        }
    }
}

impl fmt::Display for ErrorMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for ErrorMode {
    type Err = TilingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        match s {
            "full" => Ok(ErrorMode::Full),
            "coverable" => Ok(ErrorMode::Coverable),
            _ => Err(TilingError::UnknownName {
                what: "error mode",
                value: s.to_owned(),
            }),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Default)]
pub struct ErrorTerms {
    pub ones_outside: usize,
    pub zeros_inside: usize,
}

impl ErrorTerms {
    pub fn total(&self) -> usize {
        self.ones_outside + self.zeros_inside
    }
}

/// Error of the tiling formed by `tiles`. In coverable mode only ones inside
/// some rectangle of `candidates` count towards `ones_outside`; full mode
/// ignores `candidates`.
pub fn error(matrix: &BinaryMatrix, tiles: &[Tile], mode: ErrorMode, candidates: &[Tile]) -> ErrorTerms {
    let covered = rectangle_mask(matrix, tiles);
    let coverable = match mode {
        ErrorMode::Full => None,
        ErrorMode::Coverable => Some(rectangle_mask(matrix, candidates)),
    };
    let mut terms = ErrorTerms::default();
    for (i, &s) in covered.iter().enumerate() {
        let d = matrix.cells[i];
        if d && !s && coverable.as_ref().is_none_or(|c| c[i]) {
            terms.ones_outside += 1;
        }
        if !d && s {
            terms.zeros_inside += 1;
        }
    }
    terms
}

fn rectangle_mask(matrix: &BinaryMatrix, tiles: &[Tile]) -> Vec<bool> {
    let mut mask = vec![false; matrix.rows * matrix.cols];
    for t in tiles {
        for &r in &t.rows {
            for &c in &t.cols {
                mask[r * matrix.cols + c] = true;
            }
        }
    }
    mask
}
