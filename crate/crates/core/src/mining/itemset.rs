use rayon::prelude::*;

use super::{MinSupport, MiningError};
use crate::pattern::{Itemset, Pattern, PatternRecord, SymbolId, TransactionDb};

/// Tid-list (0-based, sorted) paired with the item that produced it.
type Column = (SymbolId, Vec<u32>);

/// Depth-first enumeration over vertical tid-lists (Eclat).
///
/// Returns every nonempty itemset with support `>= minsup`, ordered by size
/// and then by item ids.
pub fn mine_frequent_itemsets(db: &TransactionDb, minsup: MinSupport) -> Result<Vec<PatternRecord>, MiningError> {
    if db.is_empty() {
        return Err(MiningError::EmptyDatabase);
    }
    let sigma = minsup.threshold(db.len());
    if sigma > db.len() {
        return Ok(Vec::new());
    }

    let found = eclat(db.transactions().iter().map(Itemset::items), db.item_count(), sigma);
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (items, cover))| {
            PatternRecord::new(i + 1, Pattern::Itemset(Itemset::from_sorted_unchecked(items)), cover)
        })
        .collect())
}

/// Frequent itemsets over raw rows, sorted by size then ids, with 1-based covers.
/// Rows may be empty; they still count towards the database size.
pub(crate) fn eclat<'a>(
    rows: impl Iterator<Item = &'a [SymbolId]>,
    item_count: usize,
    sigma: usize,
) -> Vec<(Vec<SymbolId>, Vec<usize>)> {
    let mut vertical: Vec<Vec<u32>> = vec![Vec::new(); item_count];
    for (tid, row) in rows.enumerate() {
        for item in row {
            vertical[item.index()].push(tid as u32);
        }
    }
    let roots: Vec<Column> = vertical
        .into_iter()
        .enumerate()
        .filter(|(_, tids)| tids.len() >= sigma)
        .map(|(i, tids)| (SymbolId(i as u32), tids))
        .collect();

    let mut found: Vec<(Vec<SymbolId>, Vec<u32>)> = (0..roots.len())
        .into_par_iter()
        .flat_map_iter(|i| {
            let mut out = Vec::new();
            let mut prefix = Vec::new();
            expand(&roots, i, sigma, &mut prefix, &mut out);
            out
        })
        .collect();

    found.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    found
        .into_iter()
        .map(|(items, tids)| (items, tids.into_iter().map(|t| t as usize + 1).collect()))
        .collect()
}

fn expand(
    siblings: &[Column],
    at: usize,
    sigma: usize,
    prefix: &mut Vec<SymbolId>,
    out: &mut Vec<(Vec<SymbolId>, Vec<u32>)>,
) {
    let (item, tids) = &siblings[at];
    prefix.push(*item);
    out.push((prefix.clone(), tids.clone()));

    let children: Vec<Column> = siblings[at + 1..]
        .iter()
        .filter_map(|(other, other_tids)| {
            let joint = intersect(tids, other_tids);
            (joint.len() >= sigma).then_some((*other, joint))
        })
        .collect();
    for i in 0..children.len() {
        expand(&children, i, sigma, prefix, out);
    }
    prefix.pop();
}

fn intersect(a: &[u32], b: &[u32]) -> Vec<u32> {
    let mut out = Vec::with_capacity(a.len().min(b.len()));
    let (mut i, mut j) = (0, 0);
    while i < a.len() && j < b.len() {
        match a[i].cmp(&b[j]) {
            std::cmp::Ordering::Less => i += 1,
            std::cmp::Ordering::Greater => j += 1,
            std::cmp::Ordering::Equal => {
                out.push(a[i]);
                i += 1;
                j += 1;
            }
        }
    }
    out
}
