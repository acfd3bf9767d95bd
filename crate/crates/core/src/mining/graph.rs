use std::collections::BTreeMap;

use super::itemset::eclat;
use super::{gspan, MinSupport, MiningError};
use crate::pattern::{
    edge_itemize, graph_from_edge_items, is_unique_labeled, EdgeItem, GraphDb, Pattern, PatternRecord, SymbolId,
};

/// Frequent edge sets of unique-labelled graphs, mined as itemsets over
/// label-pair items. Patterns may be disconnected.
pub fn mine_frequent_graphs_unique(db: &GraphDb, minsup: MinSupport) -> Result<Vec<PatternRecord>, MiningError> {
    if db.is_empty() {
        return Err(MiningError::EmptyDatabase);
    }
    if let Some(i) = db.graphs().iter().position(|g| !is_unique_labeled(g)) {
        return Err(MiningError::NotUniqueLabeled { gid: i + 1 });
    }
    let sigma = minsup.threshold(db.len());
    if sigma > db.len() {
        return Ok(Vec::new());
    }

    let itemized: Vec<Vec<EdgeItem>> = db
        .graphs()
        .iter()
        .map(|g| {
            if g.edge_count() == 0 {
                Ok(Vec::new())
            } else {
                edge_itemize(g)
            }
        })
        .collect::<Result<_, _>>()?;
    // item ids follow label-pair order so itemset order matches edge-list order
    let mut items: BTreeMap<EdgeItem, SymbolId> = itemized.iter().flatten().map(|&p| (p, SymbolId(0))).collect();
    for (i, id) in items.values_mut().enumerate() {
        *id = SymbolId(i as u32);
    }
    let pairs: Vec<EdgeItem> = items.keys().copied().collect();
    let rows: Vec<Vec<SymbolId>> = itemized
        .iter()
        .map(|row| row.iter().map(|p| items[p]).collect())
        .collect();

    eclat(rows.iter().map(Vec::as_slice), pairs.len(), sigma)
        .into_iter()
        .enumerate()
        .map(|(i, (ids, cover))| {
            let edges: Vec<EdgeItem> = ids.iter().map(|id| pairs[id.index()]).collect();
            let g = graph_from_edge_items(&edges)?;
            Ok(PatternRecord::new(i + 1, Pattern::Graph(g), cover))
        })
        .collect()
}

/// Frequent connected patterns with `1..=max_edges` edges, one per
/// isomorphism class, ordered by edge count and then minimum DFS code.
pub fn mine_frequent_graphs_general(
    db: &GraphDb,
    minsup: MinSupport,
    max_edges: Option<usize>,
) -> Result<Vec<PatternRecord>, MiningError> {
    if db.is_empty() {
        return Err(MiningError::EmptyDatabase);
    }
    if max_edges == Some(0) {
        return Err(MiningError::InvalidLimit("max_edges"));
    }
    let sigma = minsup.threshold(db.len());
    if sigma > db.len() {
        return Ok(Vec::new());
    }
    let mut found = gspan::mine(db.graphs(), sigma, max_edges.unwrap_or(usize::MAX));
    found.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (code, cover))| PatternRecord::new(i + 1, Pattern::Graph(code.to_graph()), cover))
        .collect())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{subgraph_isomorphic, GraphDbBuilder, LabeledGraph};

    fn toy_graphs(which: &[usize]) -> GraphDb {
        let mut b = GraphDbBuilder::new();
        for &i in which {
            match i {
                1 => b.graph(&["a", "b", "c", "d", "e"], &[(0, 1), (0, 2), (0, 3), (2, 4)]),
                2 => b.graph(&["a", "b", "c", "f", "e"], &[(0, 1), (0, 2), (0, 3), (2, 4), (1, 3)]),
                3 => b.graph(&["a", "b", "c", "f", "a"], &[(0, 1), (0, 2), (0, 3), (3, 4), (1, 3)]),
                _ => unreachable!(),
            }
            .unwrap();
        }
        b.build()
    }

    fn edge_labels(db: &GraphDb, g: &LabeledGraph) -> Vec<String> {
        let t = db.vertex_labels();
        g.edges()
            .iter()
            .map(|e| {
                let mut p = [t.label(g.label(e.u)).unwrap(), t.label(g.label(e.v)).unwrap()];
                p.sort();
                p.concat()
            })
            .collect()
    }

    #[test]
    fn unique_mode_on_first_two_toy_graphs() {
        let db = toy_graphs(&[1, 2]);
        let out = mine_frequent_graphs_unique(&db, MinSupport::Absolute(2)).unwrap();
        assert_eq!(out.len(), 7);
        let mut all: Vec<_> = out
            .iter()
            .map(|r| {
                let Pattern::Graph(g) = &r.pattern else { unreachable!() };
                let mut e = edge_labels(&db, g);
                e.sort();
                e.join(" ")
            })
            .collect();
        all.sort();
        assert!(all.contains(&"ab ac ce".to_string()));
        assert!(all.contains(&"ab".to_string()));
        assert!(out.iter().all(|r| r.support == 2));
    }

    #[test]
    fn unique_mode_rejects_repeated_labels() {
        let db = toy_graphs(&[1, 3]);
        assert_eq!(
            mine_frequent_graphs_unique(&db, MinSupport::Absolute(1)),
            Err(MiningError::NotUniqueLabeled { gid: 2 })
        );
    }

    #[test]
    fn unique_mode_single_graph_all_subsets() {
        let db = toy_graphs(&[1]);
        assert_eq!(
            mine_frequent_graphs_unique(&db, MinSupport::Absolute(1)).unwrap().len(),
            15
        );
        assert!(
            mine_frequent_graphs_unique(&toy_graphs(&[1, 2]), MinSupport::Absolute(3))
                .unwrap()
                .is_empty()
        );
    }

    #[test]
    fn general_mode_finds_shared_triangle() {
        let mut db = toy_graphs(&[2, 3]);
        let out = mine_frequent_graphs_general(&db, MinSupport::Absolute(2), None).unwrap();
        let triangle = out.iter().find(|r| {
            let Pattern::Graph(g) = &r.pattern else { unreachable!() };
            g.edge_count() == 3 && g.vertex_count() == 3
        });
        let Pattern::Graph(t) = &triangle.expect("triangle present").pattern else {
            unreachable!()
        };
        let mut labels: Vec<_> = t
            .labels()
            .iter()
            .map(|&l| db.vertex_labels().label(l).unwrap())
            .collect();
        labels.sort();
        assert_eq!(labels, vec!["a", "b", "f"]);
        for g in db.graphs() {
            assert!(subgraph_isomorphic(t, g).is_some());
        }
        db = toy_graphs(&[1, 2, 3]);
        let out = mine_frequent_graphs_general(&db, MinSupport::Absolute(3), None).unwrap();
        assert!(out.iter().any(|r| {
            let Pattern::Graph(g) = &r.pattern else { unreachable!() };
            edge_labels(&db, g) == vec!["ab"]
        }));
    }

    #[test]
    fn general_mode_single_edges() {
        let db = toy_graphs(&[1, 2, 3]);
        let out = mine_frequent_graphs_general(&db, MinSupport::Absolute(1), Some(1)).unwrap();
        let mut got: Vec<_> = out
            .iter()
            .map(|r| {
                let Pattern::Graph(g) = &r.pattern else { unreachable!() };
                edge_labels(&db, g).concat()
            })
            .collect();
        got.sort();
        assert_eq!(got, vec!["ab", "ac", "ad", "af", "bf", "ce"]);
    }
}
