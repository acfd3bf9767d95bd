//! Minimum DFS codes and rightmost-path pattern growth over labelled graphs.
//!
//! A pattern is reported only from its minimum DFS code, so every connected
//! pattern is produced exactly once regardless of how many growth paths
//! reach it.

use std::cmp::Reverse;
use std::collections::BTreeMap;

use rayon::prelude::*;

use crate::pattern::{LabeledGraph, SymbolId};

/// One edge of a DFS code. Vertex indices are discovery times.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct DfsEdge {
    pub from: usize,
    pub to: usize,
    pub from_label: SymbolId,
    pub edge_label: SymbolId,
    pub to_label: SymbolId,
}

impl DfsEdge {
    fn is_forward(&self) -> bool {
        self.from < self.to
    }
}

#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct DfsCode(Vec<DfsEdge>);

impl DfsCode {
    pub fn edges(&self) -> &[DfsEdge] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// Minimum DFS code of a connected graph with at least one edge.
    pub fn minimum(g: &LabeledGraph) -> Option<DfsCode> {
        if g.edge_count() == 0 || !g.is_connected() {
            return None;
        }
        greedy_minimum(&Host::from_graph(g), None).map(DfsCode)
    }

    /// Rebuilds the graph; vertex `i` is the `i`-th discovered vertex.
    pub fn to_graph(&self) -> LabeledGraph {
        let mut labels = Vec::new();
        for e in &self.0 {
            if labels.len() <= e.from {
                labels.resize(e.from + 1, SymbolId(0));
            }
            if labels.len() <= e.to {
                labels.resize(e.to + 1, SymbolId(0));
            }
            labels[e.from] = e.from_label;
            labels[e.to] = e.to_label;
        }
        LabeledGraph::new(labels, self.0.iter().map(|e| (e.from, e.to, e.edge_label)))
            .expect("a DFS code describes a simple graph")
    }

    fn vertex_count(&self) -> usize {
        self.0.iter().map(|e| e.from.max(e.to) + 1).max().unwrap_or(0)
    }

    fn vertex_label(&self, v: usize) -> SymbolId {
        code_label(&self.0, v)
    }

    /// Indices of the forward edges on the rightmost path, deepest first.
    fn rightmost_path(&self) -> Vec<usize> {
        rightmost_path(&self.0)
    }
}

fn code_label(code: &[DfsEdge], v: usize) -> SymbolId {
    code.iter()
        .find_map(|e| {
            if e.from == v {
                Some(e.from_label)
            } else if e.to == v {
                Some(e.to_label)
            } else {
                None
            }
        })
        .expect("vertex appears in code")
}

fn rightmost_path(code: &[DfsEdge]) -> Vec<usize> {
    let mut path = Vec::new();
    let mut old_from = usize::MAX;
    for (i, e) in code.iter().enumerate().rev() {
        if e.is_forward() && (path.is_empty() || old_from == e.to) {
            path.push(i);
            old_from = e.from;
        }
    }
    path
}

/// Directed view of a host edge; every undirected edge appears twice with one id.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
struct HostEdge {
    from: usize,
    to: usize,
    label: SymbolId,
    id: usize,
}

struct Host {
    labels: Vec<SymbolId>,
    adj: Vec<Vec<HostEdge>>,
    edge_count: usize,
}

impl Host {
    fn from_graph(g: &LabeledGraph) -> Self {
        let mut adj = vec![Vec::new(); g.vertex_count()];
        for (id, e) in g.edges().iter().enumerate() {
            adj[e.u].push(HostEdge {
                from: e.u,
                to: e.v,
                label: e.label,
                id,
            });
            adj[e.v].push(HostEdge {
                from: e.v,
                to: e.u,
                label: e.label,
                id,
            });
        }
        Host {
            labels: g.labels().to_vec(),
            adj,
            edge_count: g.edge_count(),
        }
    }
}

/// An embedding of the current code: host edges aligned with the code edges.
#[derive(Clone)]
struct Embedding {
    gid: usize,
    edges: Vec<HostEdge>,
}

impl Embedding {
    fn extended(&self, e: HostEdge) -> Embedding {
        let mut edges = Vec::with_capacity(self.edges.len() + 1);
        edges.extend_from_slice(&self.edges);
        edges.push(e);
        Embedding { gid: self.gid, edges }
    }
}

struct History {
    has_edge: Vec<bool>,
    has_vertex: Vec<bool>,
}

impl History {
    fn new(host: &Host, edges: &[HostEdge]) -> Self {
        let mut has_edge = vec![false; host.edge_count];
        let mut has_vertex = vec![false; host.labels.len()];
        for e in edges {
            has_edge[e.id] = true;
            has_vertex[e.from] = true;
            has_vertex[e.to] = true;
        }
        History { has_edge, has_vertex }
    }
}

fn forward_pure(host: &Host, rightmost: HostEdge, min_label: SymbolId, h: &History) -> Vec<HostEdge> {
    host.adj[rightmost.to]
        .iter()
        .filter(|e| host.labels[e.to] >= min_label && !h.has_vertex[e.to])
        .copied()
        .collect()
}

fn forward_rmpath(host: &Host, on_path: HostEdge, min_label: SymbolId, h: &History) -> Vec<HostEdge> {
    let to_label = host.labels[on_path.to];
    host.adj[on_path.from]
        .iter()
        .filter(|e| {
            let new_label = host.labels[e.to];
            e.to != on_path.to
                && new_label >= min_label
                && !h.has_vertex[e.to]
                && (on_path.label < e.label || (on_path.label == e.label && to_label <= new_label))
        })
        .copied()
        .collect()
}

fn backward(host: &Host, on_path: HostEdge, rightmost: HostEdge, h: &History) -> Option<HostEdge> {
    if on_path.id == rightmost.id {
        return None;
    }
    host.adj[rightmost.to].iter().copied().find(|e| {
        !h.has_edge[e.id]
            && e.to == on_path.from
            && (on_path.label < e.label
                || (on_path.label == e.label && host.labels[on_path.to] <= host.labels[rightmost.to]))
    })
}

/// Builds the minimum DFS code of `host` greedily. With `against`, stops and
/// returns `None` as soon as the code being built diverges from it.
fn greedy_minimum(host: &Host, against: Option<&[DfsEdge]>) -> Option<Vec<DfsEdge>> {
    let mut roots: BTreeMap<(SymbolId, SymbolId, SymbolId), Vec<Embedding>> = BTreeMap::new();
    for v in 0..host.labels.len() {
        for &e in &host.adj[v] {
            if host.labels[v] <= host.labels[e.to] {
                roots
                    .entry((host.labels[v], e.label, host.labels[e.to]))
                    .or_default()
                    .push(Embedding { gid: 0, edges: vec![e] });
            }
        }
    }
    let ((fl, el, tl), mut projected) = roots.into_iter().next()?;
    let mut code = vec![DfsEdge {
        from: 0,
        to: 1,
        from_label: fl,
        edge_label: el,
        to_label: tl,
    }];
    let diverged = |code: &[DfsEdge]| against.is_some_and(|a| a.get(code.len() - 1) != code.last());
    if diverged(&code) {
        return None;
    }

    loop {
        let rmpath = rightmost_path(&code);
        let min_label = code[0].from_label;
        let maxtoc = code[rmpath[0]].to;

        // backward edges from the rightmost vertex, closest-to-root target first
        let mut back: BTreeMap<SymbolId, Vec<Embedding>> = BTreeMap::new();
        let mut new_to = 0;
        for i in (1..rmpath.len()).rev() {
            for emb in &projected {
                let h = History::new(host, &emb.edges);
                if let Some(e) = backward(host, emb.edges[rmpath[i]], emb.edges[rmpath[0]], &h) {
                    back.entry(e.label).or_default().push(emb.extended(e));
                    new_to = code[rmpath[i]].from;
                }
            }
            if !back.is_empty() {
                break;
            }
        }
        if let Some((el, embs)) = back.into_iter().next() {
            let edge = DfsEdge {
                from: maxtoc,
                to: new_to,
                from_label: code_label(&code, maxtoc),
                edge_label: el,
                to_label: code_label(&code, new_to),
            };
            code.push(edge);
            if diverged(&code) {
                return None;
            }
            projected = embs;
            continue;
        }

        // forward edges: from the rightmost vertex, then up the rightmost path
        let mut fwd: BTreeMap<(SymbolId, SymbolId), Vec<Embedding>> = BTreeMap::new();
        let mut new_from = 0;
        for emb in &projected {
            let h = History::new(host, &emb.edges);
            for e in forward_pure(host, emb.edges[rmpath[0]], min_label, &h) {
                fwd.entry((e.label, host.labels[e.to]))
                    .or_default()
                    .push(emb.extended(e));
                new_from = maxtoc;
            }
        }
        if fwd.is_empty() {
            for &i in &rmpath {
                for emb in &projected {
                    let h = History::new(host, &emb.edges);
                    for e in forward_rmpath(host, emb.edges[i], min_label, &h) {
                        fwd.entry((e.label, host.labels[e.to]))
                            .or_default()
                            .push(emb.extended(e));
                        new_from = code[i].from;
                    }
                }
                if !fwd.is_empty() {
                    break;
                }
            }
        }
        match fwd.into_iter().next() {
            Some(((el, tl), embs)) => {
                let edge = DfsEdge {
                    from: new_from,
                    to: maxtoc + 1,
                    from_label: code_label(&code, new_from),
                    edge_label: el,
                    to_label: tl,
                };
                code.push(edge);
                if diverged(&code) {
                    return None;
                }
                projected = embs;
            }
            None => return Some(code),
        }
    }
}

fn is_min(code: &DfsCode) -> bool {
    if code.len() == 1 {
        return code.0[0].from_label <= code.0[0].to_label;
    }
    let host = Host::from_graph(&code.to_graph());
    greedy_minimum(&host, Some(&code.0)).is_some_and(|min| min.len() == code.len())
}

/// A frequent connected pattern: its minimum DFS code and sorted 1-based gids.
pub(crate) type Found = (DfsCode, Vec<usize>);

pub(crate) fn mine(graphs: &[LabeledGraph], sigma: usize, max_edges: usize) -> Vec<Found> {
    let hosts: Vec<Host> = graphs.iter().map(Host::from_graph).collect();
    let mut roots: BTreeMap<(SymbolId, SymbolId, SymbolId), Vec<Embedding>> = BTreeMap::new();
    for (gid, host) in hosts.iter().enumerate() {
        for v in 0..host.labels.len() {
            for &e in &host.adj[v] {
                if host.labels[v] <= host.labels[e.to] {
                    roots
                        .entry((host.labels[v], e.label, host.labels[e.to]))
                        .or_default()
                        .push(Embedding { gid, edges: vec![e] });
                }
            }
        }
    }
    let miner = Miner {
        hosts: &hosts,
        sigma,
        max_edges,
    };
    roots
        .into_iter()
        .collect::<Vec<_>>()
        .into_par_iter()
        .flat_map_iter(|((fl, el, tl), embs)| {
            let mut code = DfsCode(vec![DfsEdge {
                from: 0,
                to: 1,
                from_label: fl,
                edge_label: el,
                to_label: tl,
            }]);
            let mut out = Vec::new();
            miner.project(&mut code, embs, &mut out);
            out
        })
        .collect()
}

struct Miner<'a> {
    hosts: &'a [Host],
    sigma: usize,
    max_edges: usize,
}

impl Miner<'_> {
    fn project(&self, code: &mut DfsCode, projected: Vec<Embedding>, out: &mut Vec<Found>) {
        let mut gids: Vec<usize> = projected.iter().map(|e| e.gid).collect();
        gids.sort_unstable();
        gids.dedup();
        if gids.len() < self.sigma || !is_min(code) {
            return;
        }
        out.push((code.clone(), gids.iter().map(|g| g + 1).collect()));
        if code.len() >= self.max_edges {
            return;
        }

        let rmpath = code.rightmost_path();
        let min_label = code.0[0].from_label;
        let maxtoc = code.0[rmpath[0]].to;
        let mut back: BTreeMap<(usize, SymbolId), Vec<Embedding>> = BTreeMap::new();
        // keyed so that iteration visits larger `from` first
        let mut fwd: BTreeMap<(Reverse<usize>, SymbolId, SymbolId), Vec<Embedding>> = BTreeMap::new();

        for emb in &projected {
            let host = &self.hosts[emb.gid];
            let h = History::new(host, &emb.edges);
            for i in (1..rmpath.len()).rev() {
                if let Some(e) = backward(host, emb.edges[rmpath[i]], emb.edges[rmpath[0]], &h) {
                    back.entry((code.0[rmpath[i]].from, e.label))
                        .or_default()
                        .push(emb.extended(e));
                }
            }
            for e in forward_pure(host, emb.edges[rmpath[0]], min_label, &h) {
                fwd.entry((Reverse(maxtoc), e.label, host.labels[e.to]))
                    .or_default()
                    .push(emb.extended(e));
            }
            for &i in &rmpath {
                for e in forward_rmpath(host, emb.edges[i], min_label, &h) {
                    fwd.entry((Reverse(code.0[i].from), e.label, host.labels[e.to]))
                        .or_default()
                        .push(emb.extended(e));
                }
            }
        }

        for ((to, el), embs) in back {
            code.0.push(DfsEdge {
                from: maxtoc,
                to,
                from_label: code.vertex_label(maxtoc),
                edge_label: el,
                to_label: code.vertex_label(to),
            });
            self.project(code, embs, out);
            code.0.pop();
        }
        let next = code.vertex_count();
        for ((Reverse(from), el, tl), embs) in fwd {
            code.0.push(DfsEdge {
                from,
                to: next,
                from_label: code.vertex_label(from),
                edge_label: el,
                to_label: tl,
            });
            self.project(code, embs, out);
            code.0.pop();
        }
    }
}
