use serde::{Deserialize, Serialize};

use super::ParseError;
use crate::tiling::{BinaryMatrix, Tile, TileSelection};

/// First line of a tiling report.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct TilingSummary {
    /// `greedy`, `first`, `all` or `optimal`.
    pub method: String,
    pub error_mode: String,
    pub threshold: usize,
    pub candidates: usize,
    /// `admissible`, `stuck` or `unsatisfiable`.
    pub status: String,
    pub solutions: usize,
}

/// One selection of a tiling report, ids ascending.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SelectionLine {
    pub chosen: Vec<usize>,
    pub k: usize,
    pub ones_outside: usize,
    pub zeros_inside: usize,
    pub error: usize,
}

impl From<&TileSelection> for SelectionLine {
    fn from(s: &TileSelection) -> Self {
        SelectionLine {
            chosen: s.chosen.clone(),
            k: s.k(),
            ones_outside: s.terms.ones_outside,
            zeros_inside: s.terms.zeros_inside,
            error: s.error(),
        }
    }
}

/// The summary line followed by one line per selection.
pub fn tiling_report_to_string(summary: &TilingSummary, selections: &[TileSelection]) -> String {
    let mut out = serde_json::to_string(summary).expect("summaries always serialize");
    out.push('\n');
    for s in selections {
        out.push_str(&serde_json::to_string(&SelectionLine::from(s)).expect("selections always serialize"));
        out.push('\n');
    }
    out
}

pub fn parse_tiling_report(text: &str) -> Result<(TilingSummary, Vec<SelectionLine>), ParseError> {
    let mut lines = text.lines().enumerate();
    let (_, first) = lines.next().ok_or_else(|| ParseError::new(1, "input is empty"))?;
    let summary: TilingSummary = serde_json::from_str(first).map_err(|e| ParseError::new(1, e.to_string()))?;
    let selections = lines
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| ParseError::new(i + 1, e.to_string())))
        .collect::<Result<Vec<SelectionLine>, _>>()?;
    if selections.len() != summary.solutions {
        return Err(ParseError::new(
            1,
            format!(
                "summary announces {} solutions, found {}",
                summary.solutions,
                selections.len()
            ),
        ));
    }
    Ok((summary, selections))
}

#[derive(Debug, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
struct CandidateLine {
    rows: Vec<usize>,
    cols: Vec<usize>,
}

/// `{"rows": [...], "cols": [...]}` per line, 0-based. Tiles get ids in file
/// order and are validated against `matrix`.
pub fn parse_candidates(text: &str, matrix: &BinaryMatrix) -> Result<Vec<Tile>, ParseError> {
    text.lines()
        .enumerate()
        .map(|(i, l)| {
            let c: CandidateLine = serde_json::from_str(l).map_err(|e| ParseError::new(i + 1, e.to_string()))?;
            Tile::new(matrix, i, c.rows, c.cols).map_err(|e| ParseError::new(i + 1, e.to_string()))
        })
        .collect()
}

pub fn candidates_to_string(tiles: &[Tile]) -> String {
    let mut out = String::new();
    for t in tiles {
        let line = CandidateLine {
            rows: t.rows().to_vec(),
            cols: t.cols().to_vec(),
        };
        out.push_str(&serde_json::to_string(&line).expect("candidates always serialize"));
        out.push('\n');
    }
    out
}
