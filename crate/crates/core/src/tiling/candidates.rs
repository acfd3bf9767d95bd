use std::collections::BTreeSet;

use super::{BinaryMatrix, Tile, TilingError};

/// Confidence-based candidate tiles.
///
/// For each column `i` with at least one one, the column set is
/// `B_i = { j : conf(i => j) >= tau }` with `conf(i => j)` the fraction of
/// rows holding `i` that also hold `j`. The row set keeps every row with at
/// least as many ones as zeros inside `B_i`. Duplicates are dropped, the rest
/// sorted by descending area (ones inside) and cut to `max_candidates`.
/// Ids follow the final order, starting at 0.
pub fn generate_candidates(matrix: &BinaryMatrix, tau: f64, max_candidates: usize) -> Result<Vec<Tile>, TilingError> {
    if !(tau > 0.0 && tau <= 1.0) {
        return Err(TilingError::InvalidTau(tau));
    }
    let n = matrix.cols();
    let mut col_count = vec![0usize; n];
    let mut pair_count = vec![0usize; n * n];
    for r in 0..matrix.rows() {
        let ones: Vec<usize> = (0..n).filter(|&c| matrix.get(r, c)).collect();
        for &i in &ones {
            col_count[i] += 1;
            for &j in &ones {
                pair_count[i * n + j] += 1;
            }
        }
    }

    let mut seen: BTreeSet<(Vec<usize>, Vec<usize>)> = BTreeSet::new();
    for i in (0..n).filter(|&i| col_count[i] > 0) {
        let support = col_count[i] as f64;
        let cols: Vec<usize> = (0..n)
            .filter(|&j| pair_count[i * n + j] as f64 >= tau * support - 1e-9)
            .collect();
        let rows: Vec<usize> = (0..matrix.rows())
            .filter(|&r| 2 * cols.iter().filter(|&&c| matrix.get(r, c)).count() >= cols.len())
            .collect();
        if !rows.is_empty() {
            seen.insert((rows, cols));
        }
    }

    let mut tiles: Vec<Tile> = seen
        .into_iter()
        .map(|(rows, cols)| Tile::new(matrix, 0, rows, cols))
        .collect::<Result<_, _>>()?;
    tiles.sort_by(|a, b| {
        b.ones()
            .len()
            .cmp(&a.ones().len())
            .then_with(|| (a.cols(), a.rows()).cmp(&(b.cols(), b.rows())))
    });
    tiles.truncate(max_candidates);
    Ok(tiles.into_iter().enumerate().map(|(id, t)| t.with_id(id)).collect())
}
