//! Pattern data model and the inclusion primitives shared by the miners,
//! the constraint evaluator and the condenser.

mod graph;
mod itemset;
mod sequence;
mod symbol;

use std::fmt;

use serde::{Deserialize, Serialize};
use thiserror::Error;

pub use graph::{
    edge_itemize, graph_from_edge_items, is_unique_labeled, subgraph_isomorphic, Edge, EdgeItem, GraphDb,
    GraphDbBuilder, LabeledGraph, DEFAULT_EDGE,
};
pub use itemset::{cover_itemset, Itemset, TransactionDb};
pub use sequence::{find_embedding, Embedding, Sequence, SequenceDb};
pub use symbol::{SymbolId, SymbolTable, DEFAULT_EDGE_LABEL};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum PatternError {
    #[error("empty {0} is not a valid pattern")]
    EmptyPattern(&'static str),
    #[error("symbol {0} is not in the dataset's symbol table")]
    UnknownSymbol(SymbolId),
    #[error("label `{0}` is not in the dataset's symbol table")]
    UnknownLabel(String),
    #[error("self-loop on vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge {0}-{1}")]
    DuplicateEdge(usize, usize),
    #[error("edge references undeclared vertex {0}")]
    UndeclaredVertex(usize),
    #[error("graph is not unique-labeled")]
    NotUniqueLabeled,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum PatternKind {
    Itemset,
    Sequence,
    Graph,
}

impl PatternKind {
    pub fn as_str(self) -> &'static str {
        match self {
            PatternKind::Itemset => "itemset",
            PatternKind::Sequence => "sequence",
            PatternKind::Graph => "graph",
        }
    }
}

impl fmt::Display for PatternKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Pattern {
    Itemset(Itemset),
    Sequence(Sequence),
    Graph(LabeledGraph),
}

impl Pattern {
    pub fn kind(&self) -> PatternKind {
        match self {
            Pattern::Itemset(_) => PatternKind::Itemset,
            Pattern::Sequence(_) => PatternKind::Sequence,
            Pattern::Graph(_) => PatternKind::Graph,
        }
    }

    /// Item count, sequence length or edge count.
    pub fn size(&self) -> usize {
        match self {
            Pattern::Itemset(s) => s.len(),
            Pattern::Sequence(s) => s.len(),
            Pattern::Graph(g) => g.edge_count(),
        }
    }
}

/// A mined pattern with its support and cover (sorted 1-based record ids).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PatternRecord {
    pub pid: usize,
    pub pattern: Pattern,
    pub support: usize,
    pub cover: Vec<usize>,
}

impl PatternRecord {
    pub fn new(pid: usize, pattern: Pattern, cover: Vec<usize>) -> Self {
        PatternRecord {
            pid,
            pattern,
            support: cover.len(),
            cover,
        }
    }

    pub fn kind(&self) -> PatternKind {
        self.pattern.kind()
    }

    pub fn size(&self) -> usize {
        self.pattern.size()
    }
}
