use std::collections::HashMap;
use std::fmt;

/// Dense id of an interned label within one dataset.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct SymbolId(pub u32);

impl SymbolId {
    pub fn index(self) -> usize {
        self.0 as usize
    }
}

impl fmt::Display for SymbolId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "#{}", self.0)
    }
}

/// Label of the edge used when a graph file gives none.
pub const DEFAULT_EDGE_LABEL: &str = "0";

/// Bidirectional label <-> id map. Ids are handed out in first-appearance order.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct SymbolTable {
    labels: Vec<String>,
    index: HashMap<String, SymbolId>,
}

impl SymbolTable {
    pub fn new() -> Self {
        Self::default()
    }

    /// A table whose id 0 is the default (unlabelled) edge label.
    pub fn for_edge_labels() -> Self {
        let mut table = Self::new();
        table.intern(DEFAULT_EDGE_LABEL);
        table
    }

    pub fn intern(&mut self, label: &str) -> SymbolId {
        if let Some(&id) = self.index.get(label) {
            return id;
        }
        let id = SymbolId(self.labels.len() as u32);
        self.labels.push(label.to_owned());
        self.index.insert(label.to_owned(), id);
        id
    }

    pub fn id(&self, label: &str) -> Option<SymbolId> {
        self.index.get(label).copied()
    }

    pub fn label(&self, id: SymbolId) -> Option<&str> {
        self.labels.get(id.index()).map(String::as_str)
    }

    pub fn contains(&self, id: SymbolId) -> bool {
        id.index() < self.labels.len()
    }

    pub fn len(&self) -> usize {
        self.labels.len()
    }

    pub fn is_empty(&self) -> bool {
        self.labels.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (SymbolId, &str)> {
        self.labels
            .iter()
            .enumerate()
            .map(|(i, l)| (SymbolId(i as u32), l.as_str()))
    }
}
