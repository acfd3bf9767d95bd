//! Fixtures, random instance generators and brute-force cross-checks shared
//! by the integration tests and the acceptance harness.

#![allow(dead_code)]

use std::collections::BTreeSet;

use patmine_core::condense::{brute_force_condense, condense, DominanceRelation, DEFAULT_ORACLE_BOUND};
use patmine_core::mining::{
    mine_frequent_graphs_general, mine_frequent_graphs_unique, mine_frequent_itemsets, mine_frequent_sequences,
    MinSupport,
};
use patmine_core::oracle;
use patmine_core::pattern::{
    edge_itemize, GraphDb, GraphDbBuilder, LabeledGraph, Pattern, PatternRecord, SequenceDb, SymbolId, TransactionDb,
};
use patmine_core::tiling::{exact_select, greedy_select, BinaryMatrix, ErrorMode, SearchMode, Tile, TilingProblem};
use rand::seq::SliceRandom;
use rand::Rng;

pub const ITEMS: [&str; 12] = ["a", "b", "c", "d", "e", "f", "g", "h", "i", "j", "k", "l"];

pub fn toy_transactions() -> TransactionDb {
    TransactionDb::from_labels(&[vec!["a", "b", "d", "e"], vec!["b", "c", "e"], vec!["a", "e"]]).unwrap()
}

pub fn toy_sequences() -> SequenceDb {
    SequenceDb::from_labels(&[
        vec!["a", "b", "c", "d", "a", "e", "b"],
        vec!["b", "c", "e", "b"],
        vec!["a", "a", "e"],
    ])
    .unwrap()
}

/// The three graphs of the running graph example, restricted to `which`
/// (1-based), plus the two pattern graphs interned in the same tables.
pub fn toy_graphs(which: &[usize]) -> (GraphDb, LabeledGraph, LabeledGraph) {
    let mut b = GraphDbBuilder::new();
    for &i in which {
        match i {
            1 => b.graph(&["a", "b", "c", "d", "e"], &[(0, 1), (0, 2), (0, 3), (2, 4)]),
            2 => b.graph(&["a", "b", "c", "f", "e"], &[(0, 1), (0, 2), (0, 3), (2, 4), (1, 3)]),
            3 => b.graph(&["a", "b", "c", "f", "a"], &[(0, 1), (0, 2), (0, 3), (3, 4), (1, 3)]),
            _ => panic!("no toy graph {i}"),
        }
        .unwrap();
    }
    let p1 = b
        .make(&["a", "b", "c", "e"], &[(0, 1, "0"), (0, 2, "0"), (2, 3, "0")])
        .unwrap();
    let p2 = b
        .make(&["a", "b", "f"], &[(0, 1, "0"), (0, 2, "0"), (1, 2, "0")])
        .unwrap();
    (b.build(), p1, p2)
}

pub fn small_matrix() -> BinaryMatrix {
    BinaryMatrix::new(vec![
        vec![true, true, false],
        vec![true, false, true],
        vec![false, true, true],
    ])
    .unwrap()
}

/// The three overlapping tiles drawn over [`small_matrix`].
pub fn small_tiles(m: &BinaryMatrix) -> Vec<Tile> {
    vec![
        Tile::new(m, 0, vec![0, 1], vec![0, 1, 2]).unwrap(),
        Tile::new(m, 1, vec![1, 2], vec![0, 1]).unwrap(),
        Tile::new(m, 2, vec![1, 2], vec![1, 2]).unwrap(),
    ]
}

// ---------------------------------------------------------------------------
// random instances

pub fn random_transactions(rng: &mut impl Rng, max_items: usize, max_rows: usize) -> TransactionDb {
    let items = rng.gen_range(1..=max_items);
    let rows = rng.gen_range(1..=max_rows);
    let density = rng.gen_range(0.2..0.8);
    let data: Vec<Vec<&str>> = (0..rows)
        .map(|_| {
            let mut row: Vec<&str> = ITEMS[..items]
                .iter()
                .copied()
                .filter(|_| rng.gen_bool(density))
                .collect();
            if row.is_empty() {
                row.push(ITEMS[rng.gen_range(0..items)]);
            }
            row
        })
        .collect();
    TransactionDb::from_labels(&data).unwrap()
}

pub fn random_sequences(rng: &mut impl Rng, alphabet: usize, max_seqs: usize, max_len: usize) -> SequenceDb {
    let n = rng.gen_range(1..=max_seqs);
    let data: Vec<Vec<&str>> = (0..n)
        .map(|_| {
            let len = rng.gen_range(1..=max_len);
            (0..len).map(|_| ITEMS[rng.gen_range(0..alphabet)]).collect()
        })
        .collect();
    SequenceDb::from_labels(&data).unwrap()
}

fn random_edges(rng: &mut impl Rng, vertices: usize, max_edges: usize) -> Vec<(usize, usize)> {
    let mut all: Vec<(usize, usize)> = (0..vertices)
        .flat_map(|u| (u + 1..vertices).map(move |v| (u, v)))
        .collect();
    all.shuffle(rng);
    let keep = rng.gen_range(0..=all.len().min(max_edges));
    all.truncate(keep);
    all
}

/// Graphs with repeated vertex labels from a small alphabet and two edge labels.
pub fn random_graphs(rng: &mut impl Rng, max_graphs: usize, max_vertices: usize, max_edges: usize) -> GraphDb {
    let mut b = GraphDbBuilder::new();
    for _ in 0..rng.gen_range(1..=max_graphs) {
        let n = rng.gen_range(1..=max_vertices);
        let labels: Vec<&str> = (0..n).map(|_| ITEMS[rng.gen_range(0..3)]).collect();
        let edges: Vec<(usize, usize, &str)> = random_edges(rng, n, max_edges)
            .into_iter()
            .map(|(u, v)| (u, v, if rng.gen_bool(0.7) { "0" } else { "1" }))
            .collect();
        b.labelled_graph(&labels, &edges).unwrap();
    }
    b.build()
}

/// Graphs whose vertex labels are distinct within each graph.
pub fn random_unique_graphs(rng: &mut impl Rng, max_graphs: usize, max_vertices: usize, max_edges: usize) -> GraphDb {
    let mut b = GraphDbBuilder::new();
    for _ in 0..rng.gen_range(1..=max_graphs) {
        let n = rng.gen_range(1..=max_vertices);
        let mut pool = ITEMS[..8].to_vec();
        pool.shuffle(rng);
        b.graph(&pool[..n], &random_edges(rng, n, max_edges)).unwrap();
    }
    b.build()
}

pub fn random_matrix(rng: &mut impl Rng, rows: usize, cols: usize) -> BinaryMatrix {
    let density = rng.gen_range(0.3..0.7);
    BinaryMatrix::new(
        (0..rows)
            .map(|_| (0..cols).map(|_| rng.gen_bool(density)).collect())
            .collect(),
    )
    .unwrap()
}

/// Arbitrary rectangles, which may cover zeros, with ids `0..n`.
pub fn random_rectangles(rng: &mut impl Rng, m: &BinaryMatrix, n: usize) -> Vec<Tile> {
    (0..n)
        .map(|id| loop {
            let rows: Vec<usize> = (0..m.rows()).filter(|_| rng.gen_bool(0.5)).collect();
            let cols: Vec<usize> = (0..m.cols()).filter(|_| rng.gen_bool(0.5)).collect();
            if !rows.is_empty() && !cols.is_empty() {
                break Tile::new(m, id, rows, cols).unwrap();
            }
        })
        .collect()
}

// ---------------------------------------------------------------------------
// cross-checks against the oracles; `Err` carries a readable mismatch

fn sorted_counted(mut v: Vec<(Vec<SymbolId>, Vec<usize>)>) -> Vec<(Vec<SymbolId>, Vec<usize>)> {
    v.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    v
}

fn check_pids(recs: &[PatternRecord]) -> Result<(), String> {
    for (i, r) in recs.iter().enumerate() {
        if r.pid != i + 1 || r.support != r.cover.len() {
            return Err(format!(
                "record {i} has pid {} support {} cover {:?}",
                r.pid, r.support, r.cover
            ));
        }
    }
    Ok(())
}

pub fn check_itemsets(db: &TransactionDb, sigma: usize) -> Result<(), String> {
    let mined = mine_frequent_itemsets(db, MinSupport::Absolute(sigma)).map_err(|e| e.to_string())?;
    check_pids(&mined)?;
    let got = sorted_counted(
        mined
            .iter()
            .map(|r| match &r.pattern {
                Pattern::Itemset(s) => (s.items().to_vec(), r.cover.clone()),
                other => panic!("itemset miner returned {other:?}"),
            })
            .collect(),
    );
    let want = oracle::frequent_itemsets(db, sigma).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!(
            "itemsets at sigma {sigma}: mined {} patterns, oracle {}",
            got.len(),
            want.len()
        ));
    }
    Ok(())
}

pub fn check_sequences(db: &SequenceDb, sigma: usize, max_len: Option<usize>) -> Result<(), String> {
    let mined = mine_frequent_sequences(db, MinSupport::Absolute(sigma), max_len).map_err(|e| e.to_string())?;
    check_pids(&mined)?;
    let got = sorted_counted(
        mined
            .iter()
            .map(|r| match &r.pattern {
                Pattern::Sequence(s) => (s.symbols().to_vec(), r.cover.clone()),
                other => panic!("sequence miner returned {other:?}"),
            })
            .collect(),
    );
    let want = oracle::frequent_sequences(db, sigma, max_len).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!(
            "sequences at sigma {sigma}, max_len {max_len:?}: mined {} patterns, oracle {}",
            got.len(),
            want.len()
        ));
    }
    Ok(())
}

fn graphs_of(recs: &[PatternRecord]) -> Vec<(LabeledGraph, Vec<usize>)> {
    recs.iter()
        .map(|r| match &r.pattern {
            Pattern::Graph(g) => (g.clone(), r.cover.clone()),
            other => panic!("graph miner returned {other:?}"),
        })
        .collect()
}

pub fn check_general_graphs(db: &GraphDb, sigma: usize, max_edges: Option<usize>) -> Result<(), String> {
    let mined = mine_frequent_graphs_general(db, MinSupport::Absolute(sigma), max_edges).map_err(|e| e.to_string())?;
    check_pids(&mined)?;
    let got = graphs_of(&mined);
    for (i, (g, _)) in got.iter().enumerate() {
        if !g.is_connected() || g.edge_count() == 0 {
            return Err(format!("pattern {} is not a connected graph with edges", i + 1));
        }
        if got[..i].iter().any(|(h, _)| oracle::is_isomorphic(g, h)) {
            return Err(format!("pattern {} repeats an earlier isomorphism class", i + 1));
        }
    }
    let want = oracle::frequent_connected_subgraphs(db, sigma, max_edges).map_err(|e| e.to_string())?;
    if !oracle::same_graph_patterns(&got, &want) {
        return Err(format!(
            "graphs at sigma {sigma}, max_edges {max_edges:?}: mined {} patterns, oracle {}",
            got.len(),
            want.len()
        ));
    }
    Ok(())
}

pub fn check_unique_graphs(db: &GraphDb, sigma: usize) -> Result<(), String> {
    let mined = mine_frequent_graphs_unique(db, MinSupport::Absolute(sigma)).map_err(|e| e.to_string())?;
    check_pids(&mined)?;
    let mut got: Vec<_> = graphs_of(&mined)
        .into_iter()
        .map(|(g, cover)| {
            let mut items = edge_itemize(&g).expect("unique-labelled pattern");
            items.sort();
            (items, cover)
        })
        .collect();
    got.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    let want = oracle::frequent_edge_sets(db, sigma).map_err(|e| e.to_string())?;
    if got != want {
        return Err(format!(
            "edge sets at sigma {sigma}: mined {} patterns, oracle {}",
            got.len(),
            want.len()
        ));
    }
    Ok(())
}

/// Picks at most `max` records, keeping their relative order.
pub fn random_subset(rng: &mut impl Rng, recs: &[PatternRecord], max: usize) -> Vec<PatternRecord> {
    let mut idx: Vec<usize> = (0..recs.len()).collect();
    idx.shuffle(rng);
    idx.truncate(rng.gen_range(0..=max.min(recs.len())));
    idx.sort_unstable();
    idx.into_iter().map(|i| recs[i].clone()).collect()
}

pub fn check_condense(valid: &[PatternRecord]) -> Result<(), String> {
    for rel in DominanceRelation::ALL {
        let fast = condense(valid, rel).map_err(|e| e.to_string())?;
        let slow = brute_force_condense(valid, rel, DEFAULT_ORACLE_BOUND).map_err(|e| e.to_string())?;
        if fast != slow {
            let pids = |v: &[PatternRecord]| v.iter().map(|r| r.pid).collect::<Vec<_>>();
            return Err(format!(
                "{rel}: condense {:?}, brute force {:?}",
                pids(&fast),
                pids(&slow)
            ));
        }
    }
    Ok(())
}

// ---------------------------------------------------------------------------
// tiling

/// Cell-wise error of the union of `chosen` rectangles against `m`, as
/// `(ones_outside, zeros_inside)`. In coverable mode ones lying in no
/// candidate rectangle are skipped.
pub fn scratch_error(m: &BinaryMatrix, chosen: &[&Tile], mode: ErrorMode, candidates: &[Tile]) -> (usize, usize) {
    let inside = |ts: &[&Tile], r: usize, c: usize| ts.iter().any(|t| t.rows().contains(&r) && t.cols().contains(&c));
    let all: Vec<&Tile> = candidates.iter().collect();
    let (mut outside, mut zeros) = (0, 0);
    for r in 0..m.rows() {
        for c in 0..m.cols() {
            let s = inside(chosen, r, c);
            let d = m.get(r, c);
            if d && !s && (mode == ErrorMode::Full || inside(&all, r, c)) {
                outside += 1;
            }
            if !d && s {
                zeros += 1;
            }
        }
    }
    (outside, zeros)
}

/// Every nonempty subset with error at most `sigma`, as
/// `(ids, ones_outside, zeros_inside)` ordered by size and then ids.
pub fn brute_force_selections(
    m: &BinaryMatrix,
    candidates: &[Tile],
    mode: ErrorMode,
    sigma: usize,
) -> Vec<(Vec<usize>, usize, usize)> {
    let n = candidates.len();
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let chosen: Vec<&Tile> = (0..n).filter(|i| mask >> i & 1 == 1).map(|i| &candidates[i]).collect();
        let (o, z) = scratch_error(m, &chosen, mode, candidates);
        if o + z <= sigma {
            let mut ids: Vec<usize> = chosen.iter().map(|t| t.id()).collect();
            ids.sort_unstable();
            out.push((ids, o, z));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    out
}

/// Result of comparing the exact and greedy selectors with brute force.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub struct SelectionCheck {
    pub admissible: usize,
    pub greedy_succeeded: bool,
}

pub fn check_selection(
    m: &BinaryMatrix,
    candidates: &[Tile],
    mode: ErrorMode,
    sigma: usize,
) -> Result<SelectionCheck, String> {
    let problem = TilingProblem::new(m, candidates, mode);
    let want = brute_force_selections(m, candidates, mode, sigma);
    let bound = candidates.len();

    let all = exact_select(&problem, sigma, SearchMode::All, bound).map_err(|e| e.to_string())?;
    let got: Vec<_> = all
        .selections
        .iter()
        .map(|s| (s.chosen.clone(), s.terms.ones_outside, s.terms.zeros_inside))
        .collect();
    if got != want {
        return Err(format!("all: {} selections, brute force {}", got.len(), want.len()));
    }

    let best = want
        .iter()
        .min_by(|a, b| (a.1 + a.2, a.0.len(), &a.0).cmp(&(b.1 + b.2, b.0.len(), &b.0)));
    let optimal = exact_select(&problem, sigma, SearchMode::Optimal, bound).map_err(|e| e.to_string())?;
    match (best, optimal.selections.as_slice()) {
        (None, []) => {}
        (Some(b), [o]) if o.chosen == b.0 && o.error() == b.1 + b.2 => {}
        (b, o) => return Err(format!("optimal: brute force {b:?}, search {o:?}")),
    }

    let first = exact_select(&problem, sigma, SearchMode::First, bound).map_err(|e| e.to_string())?;
    match first.selections.as_slice() {
        [] if want.is_empty() => {}
        [s] if want.iter().any(|w| w.0 == s.chosen) => {}
        other => return Err(format!("first: {other:?} is not among {} admissible", want.len())),
    }

    let greedy = greedy_select(&problem, sigma);
    let sel = greedy.selection();
    let chosen: Vec<&Tile> = sel.chosen.iter().map(|&id| &candidates[id]).collect();
    let (o, z) = scratch_error(m, &chosen, mode, candidates);
    if (o, z) != (sel.terms.ones_outside, sel.terms.zeros_inside) {
        return Err(format!("greedy reports {:?}, recomputed ({o}, {z})", sel.terms));
    }
    if greedy.is_admissible() != (o + z <= sigma) {
        return Err(format!("greedy status {greedy:?} disagrees with error {}", o + z));
    }
    if greedy.is_admissible() && !sel.chosen.is_empty() {
        let opt = best.expect("greedy found a nonempty admissible selection");
        if opt.1 + opt.2 > sel.error() {
            return Err(format!(
                "optimal error {} above greedy error {}",
                opt.1 + opt.2,
                sel.error()
            ));
        }
    }
    Ok(SelectionCheck {
        admissible: want.len(),
        greedy_succeeded: greedy.is_admissible(),
    })
}

/// Labels of an itemset record, for readable assertions.
pub fn item_labels(db: &TransactionDb, rec: &PatternRecord) -> Vec<String> {
    match &rec.pattern {
        Pattern::Itemset(s) => s
            .items()
            .iter()
            .map(|&i| db.symbols().label(i).unwrap().to_owned())
            .collect(),
        other => panic!("not an itemset: {other:?}"),
    }
}

pub fn item_sets(db: &TransactionDb, recs: &[PatternRecord]) -> BTreeSet<Vec<String>> {
    recs.iter().map(|r| item_labels(db, r)).collect()
}
