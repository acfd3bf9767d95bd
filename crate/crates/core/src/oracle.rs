//! Exhaustive reference implementations for small inputs.
//!
//! Nothing here shares code with the miners or the inclusion tests in
//! [`crate::pattern`]: subsets are enumerated by bitmask, subsequences by
//! index tuples, and subgraph inclusion by trying injective vertex maps.
//! Every entry point refuses inputs above its size limit.

use std::collections::{BTreeMap, BTreeSet};

use thiserror::Error;

use crate::pattern::{EdgeItem, GraphDb, LabeledGraph, Pattern, SequenceDb, SymbolId, TransactionDb};

pub const MAX_ITEMS: usize = 20;
pub const MAX_SEQUENCE_LEN: usize = 16;
pub const MAX_GRAPH_EDGES: usize = 16;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
#[error("{what} is {size}, above the brute-force limit of {limit}")]
pub struct OracleError {
    pub what: &'static str,
    pub size: usize,
    pub limit: usize,
}

fn check(what: &'static str, size: usize, limit: usize) -> Result<(), OracleError> {
    if size > limit {
        return Err(OracleError { what, size, limit });
    }
    Ok(())
}

/// A pattern as symbol ids together with its sorted 1-based cover.
pub type Counted = (Vec<SymbolId>, Vec<usize>);

/// An edge set with its cover.
pub type CountedEdges = (Vec<EdgeItem>, Vec<usize>);

/// Every element of `p` occurs in `t`.
pub fn is_subset(p: &[SymbolId], t: &[SymbolId]) -> bool {
    p.iter().all(|x| t.contains(x))
}

/// Tries every strictly increasing index tuple of `host` with `p.len()` entries.
pub fn is_subsequence(p: &[SymbolId], host: &[SymbolId]) -> bool {
    fn go(p: &[SymbolId], host: &[SymbolId], from: usize) -> bool {
        let Some((&first, rest)) = p.split_first() else {
            return true;
        };
        (from..host.len()).any(|i| host[i] == first && go(rest, host, i + 1))
    }
    go(p, host, 0)
}

/// Tries injective maps from the vertices of `p` into `host`, assigning
/// vertices in index order and checking labels and edges as it goes.
pub fn is_subgraph(p: &LabeledGraph, host: &LabeledGraph) -> bool {
    fn go(p: &LabeledGraph, host: &LabeledGraph, map: &mut Vec<usize>, used: &mut [bool]) -> bool {
        let v = map.len();
        if v == p.vertex_count() {
            return true;
        }
        for h in 0..host.vertex_count() {
            if used[h] || host.label(h) != p.label(v) {
                continue;
            }
            let edges_ok = (0..v).all(|u| match p.edge_label(u, v) {
                Some(l) => host.edge_label(map[u], h) == Some(l),
                None => true,
            });
            if !edges_ok {
                continue;
            }
            used[h] = true;
            map.push(h);
            if go(p, host, map, used) {
                return true;
            }
            map.pop();
            used[h] = false;
        }
        false
    }
    if p.vertex_count() > host.vertex_count() {
        return false;
    }
    go(p, host, &mut Vec::new(), &mut vec![false; host.vertex_count()])
}

pub fn is_isomorphic(a: &LabeledGraph, b: &LabeledGraph) -> bool {
    a.vertex_count() == b.vertex_count() && a.edge_count() == b.edge_count() && is_subgraph(a, b)
}

/// `p` is a sub-pattern of `q` and differs from it.
pub fn properly_included(p: &Pattern, q: &Pattern) -> bool {
    match (p, q) {
        (Pattern::Itemset(a), Pattern::Itemset(b)) => is_subset(a.items(), b.items()) && a != b,
        (Pattern::Sequence(a), Pattern::Sequence(b)) => is_subsequence(a.symbols(), b.symbols()) && a != b,
        (Pattern::Graph(a), Pattern::Graph(b)) => is_subgraph(a, b) && !is_subgraph(b, a),
        _ => false,
    }
}

/// All nonempty itemsets over the item universe with support `>= sigma`,
/// sorted by size and then ids.
pub fn frequent_itemsets(db: &TransactionDb, sigma: usize) -> Result<Vec<Counted>, OracleError> {
    let n = db.item_count();
    check("item universe", n, MAX_ITEMS)?;
    let mut out = Vec::new();
    for mask in 1u32..(1u32 << n) {
        let items: Vec<SymbolId> = (0..n)
            .filter(|i| mask >> i & 1 == 1)
            .map(|i| SymbolId(i as u32))
            .collect();
        let cover: Vec<usize> = db
            .transactions()
            .iter()
            .enumerate()
            .filter(|(_, t)| is_subset(&items, t.items()))
            .map(|(i, _)| i + 1)
            .collect();
        if cover.len() >= sigma {
            out.push((items, cover));
        }
    }
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

/// All distinct subsequences of database sequences with support `>= sigma`,
/// sorted by length and then ids.
pub fn frequent_sequences(db: &SequenceDb, sigma: usize, max_len: Option<usize>) -> Result<Vec<Counted>, OracleError> {
    let longest = db.sequences().iter().map(|s| s.len()).max().unwrap_or(0);
    check("sequence length", longest, MAX_SEQUENCE_LEN)?;
    let cap = max_len.unwrap_or(usize::MAX);
    let mut candidates: BTreeSet<Vec<SymbolId>> = BTreeSet::new();
    for s in db.sequences() {
        let syms = s.symbols();
        for mask in 1u32..(1u32 << syms.len()) {
            if mask.count_ones() as usize <= cap {
                candidates.insert(
                    (0..syms.len())
                        .filter(|i| mask >> i & 1 == 1)
                        .map(|i| syms[i])
                        .collect(),
                );
            }
        }
    }
    let mut out: Vec<Counted> = candidates
        .into_iter()
        .filter_map(|p| {
            let cover: Vec<usize> = db
                .sequences()
                .iter()
                .enumerate()
                .filter(|(_, s)| is_subsequence(&p, s.symbols()))
                .map(|(i, _)| i + 1)
                .collect();
            (cover.len() >= sigma).then_some((p, cover))
        })
        .collect();
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

/// Frequent edge sets of unique-labelled graphs, as sorted label pairs.
pub fn frequent_edge_sets(db: &GraphDb, sigma: usize) -> Result<Vec<CountedEdges>, OracleError> {
    let per_graph: Vec<Vec<EdgeItem>> = db
        .graphs()
        .iter()
        .map(|g| {
            let mut items: Vec<EdgeItem> = g
                .edges()
                .iter()
                .map(|e| {
                    let (a, b) = (g.label(e.u), g.label(e.v));
                    (a.min(b), a.max(b))
                })
                .collect();
            items.sort();
            items
        })
        .collect();
    let widest = per_graph.iter().map(Vec::len).max().unwrap_or(0);
    check("edges per graph", widest, MAX_GRAPH_EDGES)?;

    let mut candidates: BTreeSet<Vec<EdgeItem>> = BTreeSet::new();
    for items in &per_graph {
        for mask in 1u32..(1u32 << items.len()) {
            candidates.insert(
                (0..items.len())
                    .filter(|i| mask >> i & 1 == 1)
                    .map(|i| items[i])
                    .collect(),
            );
        }
    }
    let mut out: Vec<_> = candidates
        .into_iter()
        .filter_map(|p| {
            let cover: Vec<usize> = per_graph
                .iter()
                .enumerate()
                .filter(|(_, items)| p.iter().all(|x| items.contains(x)))
                .map(|(i, _)| i + 1)
                .collect();
            (cover.len() >= sigma).then_some((p, cover))
        })
        .collect();
    out.sort_by(|a, b| (a.0.len(), &a.0).cmp(&(b.0.len(), &b.0)));
    Ok(out)
}

/// Frequent connected subgraphs with at least one edge, one representative
/// per isomorphism class, ordered by edge count.
pub fn frequent_connected_subgraphs(
    db: &GraphDb,
    sigma: usize,
    max_edges: Option<usize>,
) -> Result<Vec<(LabeledGraph, Vec<usize>)>, OracleError> {
    let widest = db.graphs().iter().map(|g| g.edge_count()).max().unwrap_or(0);
    check("edges per graph", widest, MAX_GRAPH_EDGES)?;
    let cap = max_edges.unwrap_or(usize::MAX);

    // isomorphism classes bucketed by a cheap invariant
    let mut classes: BTreeMap<Invariant, Vec<LabeledGraph>> = BTreeMap::new();
    for g in db.graphs() {
        let m = g.edge_count();
        for mask in 1u32..(1u32 << m) {
            if mask.count_ones() as usize > cap {
                continue;
            }
            let chosen: Vec<usize> = (0..m).filter(|i| mask >> i & 1 == 1).collect();
            let sub = edge_subgraph(g, &chosen);
            if !sub.is_connected() {
                continue;
            }
            let bucket = classes.entry(invariant(&sub)).or_default();
            if !bucket.iter().any(|h| is_isomorphic(h, &sub)) {
                bucket.push(sub);
            }
        }
    }
    let mut out = Vec::new();
    for p in classes.into_values().flatten() {
        let cover: Vec<usize> = db
            .graphs()
            .iter()
            .enumerate()
            .filter(|(_, g)| is_subgraph(&p, g))
            .map(|(i, _)| i + 1)
            .collect();
        if cover.len() >= sigma {
            out.push((p, cover));
        }
    }
    out.sort_by_key(|(p, _)| p.edge_count());
    Ok(out)
}

type Invariant = (usize, usize, Vec<SymbolId>, Vec<(SymbolId, SymbolId, SymbolId)>);

fn invariant(g: &LabeledGraph) -> Invariant {
    let mut labels = g.labels().to_vec();
    labels.sort();
    let mut edges: Vec<_> = g
        .edges()
        .iter()
        .map(|e| {
            let (a, b) = (g.label(e.u), g.label(e.v));
            (a.min(b), a.max(b), e.label)
        })
        .collect();
    edges.sort();
    (g.vertex_count(), g.edge_count(), labels, edges)
}

/// The subgraph formed by the chosen edges and their endpoints.
pub fn edge_subgraph(g: &LabeledGraph, edge_indices: &[usize]) -> LabeledGraph {
    let mut index: BTreeMap<usize, usize> = BTreeMap::new();
    for &i in edge_indices {
        let e = g.edges()[i];
        index.insert(e.u, 0);
        index.insert(e.v, 0);
    }
    for (k, slot) in index.values_mut().enumerate() {
        *slot = k;
    }
    let labels = index.keys().map(|&v| g.label(v)).collect();
    let edges = edge_indices.iter().map(|&i| {
        let e = g.edges()[i];
        (index[&e.u], index[&e.v], e.label)
    });
    LabeledGraph::new(labels, edges).expect("a subset of a simple graph's edges is simple")
}

/// True when both lists contain the same graphs up to isomorphism, each
/// matched with an identical cover.
pub fn same_graph_patterns(a: &[(LabeledGraph, Vec<usize>)], b: &[(LabeledGraph, Vec<usize>)]) -> bool {
    if a.len() != b.len() {
        return false;
    }
    let mut taken = vec![false; b.len()];
    a.iter().all(|(g, cover)| {
        let hit = b
            .iter()
            .enumerate()
            .position(|(j, (h, c))| !taken[j] && c == cover && is_isomorphic(g, h));
        match hit {
            Some(j) => {
                taken[j] = true;
                true
            }
            None => false,
        }
    })
}
