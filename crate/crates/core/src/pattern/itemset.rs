use std::cmp::Ordering;

use super::{PatternError, SymbolId, SymbolTable};

/// Nonempty, strictly increasing list of item ids.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Itemset(Vec<SymbolId>);

impl Itemset {
    /// Sorts and deduplicates `items`. Fails on an empty input.
    pub fn new(mut items: Vec<SymbolId>) -> Result<Self, PatternError> {
        items.sort_unstable();
        items.dedup();
        if items.is_empty() {
            return Err(PatternError::EmptyPattern("itemset"));
        }
        Ok(Itemset(items))
    }

    pub(crate) fn from_sorted_unchecked(items: Vec<SymbolId>) -> Self {
        debug_assert!(!items.is_empty());
        debug_assert!(items.windows(2).all(|w| w[0] < w[1]));
        Itemset(items)
    }

    pub fn items(&self) -> &[SymbolId] {
        &self.0
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn contains(&self, item: SymbolId) -> bool {
        self.0.binary_search(&item).is_ok()
    }

    /// `self ⊆ other` by a linear merge over both sorted lists.
    pub fn is_subset_of(&self, other: &Itemset) -> bool {
        if self.len() > other.len() {
            return false;
        }
        let mut theirs = other.0.iter();
        'outer: for mine in &self.0 {
            for t in theirs.by_ref() {
                match t.cmp(mine) {
                    Ordering::Less => continue,
                    Ordering::Equal => continue 'outer,
                    Ordering::Greater => return false,
                }
            }
            return false;
        }
        true
    }

    pub fn is_proper_subset_of(&self, other: &Itemset) -> bool {
        self.len() < other.len() && self.is_subset_of(other)
    }
}

/// Transactions with 1-based tids; transaction `tid` lives at index `tid - 1`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TransactionDb {
    transactions: Vec<Itemset>,
    symbols: SymbolTable,
}

impl TransactionDb {
    pub fn new(transactions: Vec<Itemset>, symbols: SymbolTable) -> Result<Self, PatternError> {
        for t in &transactions {
            if let Some(&bad) = t.items().iter().find(|&&i| !symbols.contains(i)) {
                return Err(PatternError::UnknownSymbol(bad));
            }
        }
        Ok(TransactionDb { transactions, symbols })
    }

    /// Builds a database from label lists, interning in first-appearance order.
    pub fn from_labels<S: AsRef<str>>(rows: &[Vec<S>]) -> Result<Self, PatternError> {
        let mut symbols = SymbolTable::new();
        let mut transactions = Vec::with_capacity(rows.len());
        for row in rows {
            let ids = row.iter().map(|l| symbols.intern(l.as_ref())).collect();
            transactions.push(Itemset::new(ids)?);
        }
        Ok(TransactionDb { transactions, symbols })
    }

    pub fn len(&self) -> usize {
        self.transactions.len()
    }

    pub fn is_empty(&self) -> bool {
        self.transactions.is_empty()
    }

    pub fn transactions(&self) -> &[Itemset] {
        &self.transactions
    }

    /// Transaction by 1-based tid.
    pub fn transaction(&self, tid: usize) -> Option<&Itemset> {
        tid.checked_sub(1).and_then(|i| self.transactions.get(i))
    }

    pub fn symbols(&self) -> &SymbolTable {
        &self.symbols
    }

    /// Resolves labels to an itemset of this database; unknown labels are an error.
    pub fn itemset(&self, labels: &[&str]) -> Result<Itemset, PatternError> {
        let ids = labels
            .iter()
            .map(|l| {
                self.symbols
                    .id(l)
                    .ok_or_else(|| PatternError::UnknownLabel((*l).to_owned()))
            })
            .collect::<Result<Vec<_>, _>>()?;
        Itemset::new(ids)
    }

    /// Number of distinct items in the symbol table.
    pub fn item_count(&self) -> usize {
        self.symbols.len()
    }
}

/// Sorted 1-based tids of the transactions containing `pattern`.
pub fn cover_itemset(db: &TransactionDb, pattern: &Itemset) -> Result<Vec<usize>, PatternError> {
    if let Some(&bad) = pattern.items().iter().find(|&&i| !db.symbols.contains(i)) {
        return Err(PatternError::UnknownSymbol(bad));
    }
    Ok(db
        .transactions
        .iter()
        .enumerate()
        .filter(|(_, t)| pattern.is_subset_of(t))
        .map(|(i, _)| i + 1)
        .collect())
}
