//! Condensed representations: the valid patterns that no other valid
//! pattern dominates.

use std::fmt;
use std::str::FromStr;

use rayon::prelude::*;
use thiserror::Error;

use crate::oracle;
use crate::pattern::{subgraph_isomorphic, LabeledGraph, Pattern, PatternKind, PatternRecord};

/// Default cap on the input size accepted by [`brute_force_condense`].
pub const DEFAULT_ORACLE_BOUND: usize = 5000;

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum CondenseError {
    #[error("cannot compare a {left} pattern with a {right} pattern")]
    KindMismatch { left: PatternKind, right: PatternKind },
    #[error("{size} patterns exceed the brute-force bound of {bound}")]
    OracleBound { size: usize, bound: usize },
    #[error("unknown representation `{0}`: expected maximal, closed, free or skyline")]
    UnknownRelation(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum DominanceRelation {
    /// Dominated by any proper super-pattern.
    Maximal,
    /// Dominated by a proper super-pattern with the same support.
    Closed,
    /// Dominated by a proper sub-pattern with the same support.
    Free,
    /// Pareto dominance on (support, size), both maximised.
    Skyline,
}

impl DominanceRelation {
    pub const ALL: [DominanceRelation; 4] = [
        DominanceRelation::Maximal,
        DominanceRelation::Closed,
        DominanceRelation::Free,
        DominanceRelation::Skyline,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            DominanceRelation::Maximal => "maximal",
            DominanceRelation::Closed => "closed",
            DominanceRelation::Free => "free",
            DominanceRelation::Skyline => "skyline",
        }
    }
}

impl fmt::Display for DominanceRelation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for DominanceRelation {
    type Err = CondenseError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        DominanceRelation::ALL
            .into_iter()
            .find(|r| r.as_str() == s)
            .ok_or_else(|| CondenseError::UnknownRelation(s.to_owned()))
    }
}

/// True when `q` is preferred to `p` under `rel`, i.e. `q` dominates `p`.
pub fn dominates(p: &PatternRecord, q: &PatternRecord, rel: DominanceRelation) -> Result<bool, CondenseError> {
    same_kind(p, q)?;
    Ok(dominated_by(p, q, rel))
}

fn same_kind(p: &PatternRecord, q: &PatternRecord) -> Result<(), CondenseError> {
    if p.kind() != q.kind() {
        return Err(CondenseError::KindMismatch {
            left: p.kind(),
            right: q.kind(),
        });
    }
    Ok(())
}

fn dominated_by(p: &PatternRecord, q: &PatternRecord, rel: DominanceRelation) -> bool {
    let (sp, sq) = (p.size(), q.size());
    match rel {
        DominanceRelation::Maximal => sp <= sq && properly_included(&p.pattern, &q.pattern),
        DominanceRelation::Closed => sp <= sq && p.support == q.support && properly_included(&p.pattern, &q.pattern),
        DominanceRelation::Free => sq <= sp && p.support == q.support && properly_included(&q.pattern, &p.pattern),
        DominanceRelation::Skyline => (p.support <= q.support && sp < sq) || (p.support < q.support && sp <= sq),
    }
}

/// Proper sub-pattern test for patterns of the same kind.
pub fn properly_included(p: &Pattern, q: &Pattern) -> bool {
    match (p, q) {
        (Pattern::Itemset(a), Pattern::Itemset(b)) => a.is_proper_subset_of(b),
        (Pattern::Sequence(a), Pattern::Sequence(b)) => a.is_proper_subsequence_of(b),
        (Pattern::Graph(a), Pattern::Graph(b)) => graph_properly_included(a, b),
        _ => false,
    }
}

fn graph_properly_included(p: &LabeledGraph, q: &LabeledGraph) -> bool {
    if p.edge_count() > q.edge_count() || p.vertex_count() > q.vertex_count() {
        return false;
    }
    // An embedding that uses as many vertices and edges as the host has is
    // an isomorphism, so inclusion is strict exactly when some count is smaller.
    let strictly_smaller = p.edge_count() < q.edge_count() || p.vertex_count() < q.vertex_count();
    if !strictly_smaller {
        return false;
    }
    if p.has_distinct_vertex_labels() && q.has_distinct_vertex_labels() {
        let mut ql = q.labels().to_vec();
        ql.sort_unstable();
        let labels_fit = p.labels().iter().all(|l| ql.binary_search(l).is_ok());
        let qt = q.label_triples();
        return labels_fit && p.label_triples().iter().all(|t| qt.binary_search(t).is_ok());
    }
    subgraph_isomorphic(p, q).is_some()
}

/// Indices into `valid` of the patterns no other member dominates, ascending.
pub fn condensed_indices(valid: &[PatternRecord], rel: DominanceRelation) -> Result<Vec<usize>, CondenseError> {
    if let Some(first) = valid.first() {
        for r in valid {
            same_kind(first, r)?;
        }
    }
    Ok((0..valid.len())
        .into_par_iter()
        .filter(|&i| {
            let p = &valid[i];
            !valid.iter().enumerate().any(|(j, q)| i != j && dominated_by(p, q, rel))
        })
        .collect())
}

/// The valid patterns not dominated by any other valid pattern, in input order.
///
/// `valid` must already satisfy the local constraints: dominance is only
/// checked among the patterns given here.
pub fn condense(valid: &[PatternRecord], rel: DominanceRelation) -> Result<Vec<PatternRecord>, CondenseError> {
    Ok(condensed_indices(valid, rel)?
        .into_iter()
        .map(|i| valid[i].clone())
        .collect())
}

/// Literal double loop over all pairs, using the exhaustive inclusion tests
/// of [`crate::oracle`]. Intended as a reference for [`condense`].
pub fn brute_force_condense(
    valid: &[PatternRecord],
    rel: DominanceRelation,
    bound: usize,
) -> Result<Vec<PatternRecord>, CondenseError> {
    if valid.len() > bound {
        return Err(CondenseError::OracleBound {
            size: valid.len(),
            bound,
        });
    }
    let mut out = Vec::new();
    for (i, p) in valid.iter().enumerate() {
        let mut dominated = false;
        for (j, q) in valid.iter().enumerate() {
            same_kind(p, q)?;
            if i == j {
                continue;
            }
            let hit = match rel {
                DominanceRelation::Maximal => oracle::properly_included(&p.pattern, &q.pattern),
                DominanceRelation::Closed => {
                    oracle::properly_included(&p.pattern, &q.pattern) && p.support == q.support
                }
                DominanceRelation::Free => oracle::properly_included(&q.pattern, &p.pattern) && p.support == q.support,
                DominanceRelation::Skyline => {
                    let (sp, sq) = (p.size(), q.size());
                    (p.support <= q.support && sp < sq) || (p.support < q.support && sp <= sq)
                }
            };
            dominated |= hit;
        }
        if !dominated {
            out.push(p.clone());
        }
    }
    Ok(out)
}
