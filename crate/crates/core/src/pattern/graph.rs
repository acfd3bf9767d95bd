use std::collections::VecDeque;

use super::{PatternError, SymbolId, SymbolTable};

/// Label id of the reserved default edge label in every graph database.
pub const DEFAULT_EDGE: SymbolId = SymbolId(0);

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Edge {
    pub u: usize,
    pub v: usize,
    pub label: SymbolId,
}

/// Simple undirected graph with labelled vertices and edges.
///
/// Vertices are the dense indices `0..vertex_count()`. Edges are stored once
/// with `u < v`, sorted, and never repeat; self-loops are rejected.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct LabeledGraph {
    labels: Vec<SymbolId>,
    edges: Vec<Edge>,
    // neighbour lists sorted by neighbour index
    adj: Vec<Vec<(usize, SymbolId)>>,
}

impl LabeledGraph {
    pub fn new(
        labels: Vec<SymbolId>,
        edges: impl IntoIterator<Item = (usize, usize, SymbolId)>,
    ) -> Result<Self, PatternError> {
        let n = labels.len();
        let mut normalized = Vec::new();
        for (a, b, label) in edges {
            if a >= n || b >= n {
                return Err(PatternError::UndeclaredVertex(a.max(b)));
            }
            if a == b {
                return Err(PatternError::SelfLoop(a));
            }
            normalized.push(Edge {
                u: a.min(b),
                v: a.max(b),
                label,
            });
        }
        normalized.sort_unstable();
        for w in normalized.windows(2) {
            if w[0].u == w[1].u && w[0].v == w[1].v {
                return Err(PatternError::DuplicateEdge(w[0].u, w[0].v));
            }
        }
        let mut adj = vec![Vec::new(); n];
        for e in &normalized {
            adj[e.u].push((e.v, e.label));
            adj[e.v].push((e.u, e.label));
        }
        for list in &mut adj {
            list.sort_unstable();
        }
        Ok(LabeledGraph {
            labels,
            edges: normalized,
            adj,
        })
    }

    pub fn vertex_count(&self) -> usize {
        self.labels.len()
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn labels(&self) -> &[SymbolId] {
        &self.labels
    }

    pub fn label(&self, v: usize) -> SymbolId {
        self.labels[v]
    }

    pub fn edges(&self) -> &[Edge] {
        &self.edges
    }

    pub fn neighbors(&self, v: usize) -> &[(usize, SymbolId)] {
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.adj[v].len()
    }

    pub fn edge_label(&self, a: usize, b: usize) -> Option<SymbolId> {
        let list = &self.adj[a];
        list.binary_search_by_key(&b, |&(w, _)| w).ok().map(|i| list[i].1)
    }

    pub fn is_connected(&self) -> bool {
        if self.labels.is_empty() {
            return true;
        }
        let mut seen = vec![false; self.labels.len()];
        let mut stack = vec![0];
        seen[0] = true;
        let mut count = 1;
        while let Some(v) = stack.pop() {
            for &(w, _) in &self.adj[v] {
                if !seen[w] {
                    seen[w] = true;
                    count += 1;
                    stack.push(w);
                }
            }
        }
        count == self.labels.len()
    }

    /// True when no vertex label repeats; edge labels are not inspected.
    pub(crate) fn has_distinct_vertex_labels(&self) -> bool {
        let mut sorted = self.labels.clone();
        sorted.sort_unstable();
        sorted.windows(2).all(|w| w[0] != w[1])
    }

    /// Edges as sorted `(min label, max label, edge label)` triples.
    pub(crate) fn label_triples(&self) -> Vec<(SymbolId, SymbolId, SymbolId)> {
        let mut out: Vec<_> = self
            .edges
            .iter()
            .map(|e| {
                let (a, b) = (self.labels[e.u], self.labels[e.v]);
                (a.min(b), a.max(b), e.label)
            })
            .collect();
        out.sort_unstable();
        out
    }
}

/// All vertex labels distinct and every edge carries the default label.
pub fn is_unique_labeled(g: &LabeledGraph) -> bool {
    g.has_distinct_vertex_labels() && g.edges.iter().all(|e| e.label == DEFAULT_EDGE)
}

/// Unordered pair of vertex labels naming an edge of a unique-labelled graph.
pub type EdgeItem = (SymbolId, SymbolId);

/// The edge set of a unique-labelled graph as sorted label pairs.
pub fn edge_itemize(g: &LabeledGraph) -> Result<Vec<EdgeItem>, PatternError> {
    if !is_unique_labeled(g) {
        return Err(PatternError::NotUniqueLabeled);
    }
    if g.edges.is_empty() {
        return Err(PatternError::EmptyPattern("edge itemset"));
    }
    Ok(g.label_triples().into_iter().map(|(a, b, _)| (a, b)).collect())
}

/// Rebuilds a unique-labelled graph from label pairs; vertices are the
/// distinct labels in ascending id order.
pub fn graph_from_edge_items(items: &[EdgeItem]) -> Result<LabeledGraph, PatternError> {
    let mut labels: Vec<SymbolId> = items.iter().flat_map(|&(a, b)| [a, b]).collect();
    labels.sort_unstable();
    labels.dedup();
    let index = |l: SymbolId| labels.binary_search(&l).unwrap();
    let edges: Vec<_> = items.iter().map(|&(a, b)| (index(a), index(b), DEFAULT_EDGE)).collect();
    LabeledGraph::new(labels.clone(), edges)
}

/// Finds an injective, label- and edge-preserving map from the vertices of
/// `pattern` into `host`. `result[v]` is the host vertex of pattern vertex `v`.
///
/// Non-induced: the host may have edges between mapped vertices that the
/// pattern lacks.
pub fn subgraph_isomorphic(pattern: &LabeledGraph, host: &LabeledGraph) -> Option<Vec<usize>> {
    if pattern.vertex_count() > host.vertex_count() || pattern.edge_count() > host.edge_count() {
        return None;
    }
    if pattern.vertex_count() == 0 {
        return Some(Vec::new());
    }
    if !label_multiset_fits(pattern.labels(), host.labels()) {
        return None;
    }
    let order = match_order(pattern);
    let mut state = Matcher {
        pattern,
        host,
        order: &order,
        mapping: vec![usize::MAX; pattern.vertex_count()],
        used: vec![false; host.vertex_count()],
    };
    if state.extend(0) {
        Some(state.mapping)
    } else {
        None
    }
}

fn label_multiset_fits(small: &[SymbolId], big: &[SymbolId]) -> bool {
    let mut a = small.to_vec();
    let mut b = big.to_vec();
    a.sort_unstable();
    b.sort_unstable();
    let mut j = 0;
    for l in a {
        while j < b.len() && b[j] < l {
            j += 1;
        }
        if j == b.len() || b[j] != l {
            return false;
        }
        j += 1;
    }
    true
}

/// BFS order, each component rooted at its highest-degree vertex; the
/// second field is an already-ordered neighbour to anchor candidates on.
fn match_order(g: &LabeledGraph) -> Vec<(usize, Option<usize>)> {
    let n = g.vertex_count();
    let mut seen = vec![false; n];
    let mut order = Vec::with_capacity(n);
    let mut roots: Vec<usize> = (0..n).collect();
    roots.sort_by_key(|&v| (std::cmp::Reverse(g.degree(v)), v));
    for root in roots {
        if seen[root] {
            continue;
        }
        seen[root] = true;
        let mut queue = VecDeque::from([(root, None)]);
        while let Some((v, parent)) = queue.pop_front() {
            order.push((v, parent));
            for &(w, _) in g.neighbors(v) {
                if !seen[w] {
                    seen[w] = true;
                    queue.push_back((w, Some(v)));
                }
            }
        }
    }
    order
}

struct Matcher<'a> {
    pattern: &'a LabeledGraph,
    host: &'a LabeledGraph,
    order: &'a [(usize, Option<usize>)],
    mapping: Vec<usize>,
    used: Vec<bool>,
}

impl Matcher<'_> {
    fn extend(&mut self, depth: usize) -> bool {
        if depth == self.order.len() {
            return true;
        }
        let (v, parent) = self.order[depth];
        let candidates: Vec<usize> = match parent {
            Some(p) => self.host.neighbors(self.mapping[p]).iter().map(|&(w, _)| w).collect(),
            None => (0..self.host.vertex_count()).collect(),
        };
        for h in candidates {
            if self.used[h] || !self.feasible(v, h) {
                continue;
            }
            self.mapping[v] = h;
            self.used[h] = true;
            if self.extend(depth + 1) {
                return true;
            }
            self.used[h] = false;
            self.mapping[v] = usize::MAX;
        }
        false
    }

    fn feasible(&self, v: usize, h: usize) -> bool {
        if self.pattern.label(v) != self.host.label(h) || self.pattern.degree(v) > self.host.degree(h) {
            return false;
        }
        self.pattern.neighbors(v).iter().all(|&(w, label)| {
            let hw = self.mapping[w];
            hw == usize::MAX || self.host.edge_label(h, hw) == Some(label)
        })
    }
}

/// Graphs with 1-based gids and shared vertex/edge label tables.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct GraphDb {
    graphs: Vec<LabeledGraph>,
    vertex_labels: SymbolTable,
    edge_labels: SymbolTable,
}

impl GraphDb {
    pub fn new(
        graphs: Vec<LabeledGraph>,
        vertex_labels: SymbolTable,
        edge_labels: SymbolTable,
    ) -> Result<Self, PatternError> {
        for g in &graphs {
            if let Some(&bad) = g.labels().iter().find(|&&l| !vertex_labels.contains(l)) {
                return Err(PatternError::UnknownSymbol(bad));
            }
            if let Some(e) = g.edges().iter().find(|e| !edge_labels.contains(e.label)) {
                return Err(PatternError::UnknownSymbol(e.label));
            }
        }
        Ok(GraphDb {
            graphs,
            vertex_labels,
            edge_labels,
        })
    }

    pub fn len(&self) -> usize {
        self.graphs.len()
    }

    pub fn is_empty(&self) -> bool {
        self.graphs.is_empty()
    }

    pub fn graphs(&self) -> &[LabeledGraph] {
        &self.graphs
    }

    pub fn vertex_labels(&self) -> &SymbolTable {
        &self.vertex_labels
    }

    pub fn edge_labels(&self) -> &SymbolTable {
        &self.edge_labels
    }

    /// Sorted gids of graphs containing `pattern`.
    pub fn cover(&self, pattern: &LabeledGraph) -> Vec<usize> {
        self.graphs
            .iter()
            .enumerate()
            .filter(|(_, g)| subgraph_isomorphic(pattern, g).is_some())
            .map(|(i, _)| i + 1)
            .collect()
    }
}

/// Incrementally assembles a [`GraphDb`] from label strings.
#[derive(Debug, Default)]
pub struct GraphDbBuilder {
    graphs: Vec<LabeledGraph>,
    vertex_labels: SymbolTable,
    edge_labels: SymbolTable,
}

impl GraphDbBuilder {
    pub fn new() -> Self {
        GraphDbBuilder {
            graphs: Vec::new(),
            vertex_labels: SymbolTable::new(),
            edge_labels: SymbolTable::for_edge_labels(),
        }
    }

    /// Adds a graph whose edges carry the default label.
    pub fn graph(&mut self, vertices: &[&str], edges: &[(usize, usize)]) -> Result<&mut Self, PatternError> {
        let labelled: Vec<_> = edges
            .iter()
            .map(|&(u, v)| (u, v, super::symbol::DEFAULT_EDGE_LABEL))
            .collect();
        self.labelled_graph(vertices, &labelled)
    }

    pub fn labelled_graph(
        &mut self,
        vertices: &[&str],
        edges: &[(usize, usize, &str)],
    ) -> Result<&mut Self, PatternError> {
        let g = self.make(vertices, edges)?;
        self.graphs.push(g);
        Ok(self)
    }

    /// Builds a graph against this builder's label tables without adding it.
    pub fn make(&mut self, vertices: &[&str], edges: &[(usize, usize, &str)]) -> Result<LabeledGraph, PatternError> {
        let labels = vertices.iter().map(|l| self.vertex_labels.intern(l)).collect();
        let edges: Vec<_> = edges
            .iter()
            .map(|&(u, v, l)| (u, v, self.edge_labels.intern(l)))
            .collect();
        LabeledGraph::new(labels, edges)
    }

    pub fn build(self) -> GraphDb {
        GraphDb {
            graphs: self.graphs,
            vertex_labels: self.vertex_labels,
            edge_labels: self.edge_labels,
        }
    }
}
