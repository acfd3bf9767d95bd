use super::{PatternError, SymbolId, SymbolTable};

/// Nonempty ordered list of symbols; repeats allowed.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Sequence(Vec<SymbolId>);

impl Sequence {
    pub fn new(symbols: Vec<SymbolId>) -> Result<Self, PatternError> {
        if symbols.is_empty() {
            return Err(PatternError::EmptyPattern("sequence"));
        }
        Ok(Sequence(symbols))
    }

    pub fn symbols(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `self ⊑ other`: an embedding exists.
    pub fn is_subsequence_of(&self, other: &Sequence) -> bool {
        find_embedding(self, other).is_some()
    }

    /// Subsequence and not equal.
    pub fn is_proper_subsequence_of(&self, other: &Sequence) -> bool {
        self.len() < other.len() && self.is_subsequence_of(other)
    }
}

/// Strictly increasing, 1-based positions of a pattern inside a host sequence.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Embedding(Vec<usize>);

impl Embedding {
    pub fn positions(&self) -> &[usize] {
        &self.0
    }
}

/// Leftmost-greedy embedding of `pattern` in `host`, or `None` when `pattern ⋢ host`.
pub fn find_embedding(pattern: &Sequence, host: &Sequence) -> Option<Embedding> {
    if pattern.len() > host.len() {
        return None;
    }
    let mut positions = Vec::with_capacity(pattern.len());
    let mut next = 0;
    for &sym in pattern.symbols() {
        let offset = host.0[next..].iter().position(|&h| h == sym)?;
        next += offset + 1;
        positions.push(next);
    }
    Some(Embedding(positions))
}

/// Sequences with 1-based sids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct SequenceDb {
    sequences: Vec<Sequence>,
    symbols: SymbolTable,
}

impl SequenceDb {
    pub fn new(sequences: Vec<Sequence>, symbols: SymbolTable) -> Result<Self, PatternError> {
        for s in &sequences {
            if let Some(&bad) = s.symbols().iter().find(|&&i| !symbols.contains(i)) {
                return Err(PatternError::UnknownSymbol(bad));
            }
        }
        Ok(SequenceDb { sequences, symbols })
    }

    pub fn from_labels<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, PatternError> {
        let mut symbols = SymbolTable::new();
        let mut sequences = Vec::with_capacity(rows.len());
        for row in rows {
            let ids = row.iter().map(|l| symbols.intern(l.as_ref())).collect();
            sequences.push(Sequence::new(ids)?);
        }
        Ok(SequenceDb { sequences, symbols })
    }

    pub fn len(&self) -> usize {
        self.sequences.len()
    }

    pub fn is_empty(&self) -> bool {
        self.sequences.is_empty()
    }

    pub fn sequences(&self) -> &[Sequence] {
        &self.sequences
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    pub fn sequence(&self, labels: &[&str]) -> Result<Sequence, PatternError> {
        let ids = labels
            .iter()
            .map(|l| {
                self.symbols
                    .id(l)
                    .ok_or_else(|| PatternError::UnknownLabel((*l).to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Sequence::new(ids)
    }

    /// Sorted sids whose sequence contains `pattern`.
    pub fn cover(&self, pattern: &Sequence) -> Vec<usize> {
        self.sequences
            .iter()
            .enumerate()
            .filter(|(_, s)| pattern.is_subsequence_of(s))
            .map(|(i, _)| i + 1)
            .collect()
    }
}
