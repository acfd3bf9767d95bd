//! Local constraints: predicates decidable on a single pattern.
//!
//! A [`ConstraintExpr`] is a conjunction of clauses, each clause a
//! disjunction of [`Atom`]s. Atoms name symbols by label; [`ConstraintExpr::bind`]
//! resolves them against a dataset's symbol table before evaluation.

mod parse;

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

pub use parse::parse_constraints;

use crate::pattern::{Pattern, PatternKind, PatternRecord, SymbolId, SymbolTable};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum ConstraintError {
    #[error("line {line}, column {column}: {message}")]
    Syntax {
        line: usize,
        column: usize,
        message: String,
    },
    #[error("line {line}, column {column}: unknown atom `{name}`")]
    UnknownAtom { line: usize, column: usize, name: String },
    #[error("line {line}, column {column}: `{atom}` expects {expected}")]
    Arity {
        line: usize,
        column: usize,
        atom: String,
        expected: &'static str,
    },
    #[error("a cost constraint is present but no weight table was given")]
    MissingWeights,
    #[error("weight table has no entry for symbol `{0}`")]
    MissingWeight(String),
    #[error("`{atom}` applies to sequences only, not to {kind} patterns")]
    KindMismatch { atom: String, kind: PatternKind },
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Atom {
    SizeMin(usize),
    SizeMax(usize),
    SupportMin(usize),
    SupportMax(usize),
    CostMax(u64),
    Contains(String),
    Excludes(String),
    /// `x` immediately followed by `y` somewhere in the sequence.
    Adjacent(String, String),
    /// Some occurrence of `x` strictly before some occurrence of `y`.
    Before(String, String),
    /// Some `x` before some `y` with no symbol of `blocked` strictly between them.
    NoneBetween {
        blocked: Vec<String>,
        x: String,
        y: String,
    },
}

impl Atom {
    fn sequence_only(&self) -> bool {
        matches!(self, Atom::Adjacent(..) | Atom::Before(..) | Atom::NoneBetween { .. })
    }
}

impl fmt::Display for Atom {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Atom::SizeMin(k) => write!(f, "size >= {k}"),
            Atom::SizeMax(k) => write!(f, "size <= {k}"),
            Atom::SupportMin(k) => write!(f, "support >= {k}"),
            Atom::SupportMax(k) => write!(f, "support <= {k}"),
            Atom::CostMax(k) => write!(f, "cost <= {k}"),
            Atom::Contains(s) => write!(f, "contains {s}"),
            Atom::Excludes(s) => write!(f, "excludes {s}"),
            Atom::Adjacent(x, y) => write!(f, "adjacent {x} {y}"),
            Atom::Before(x, y) => write!(f, "before {x} {y}"),
            Atom::NoneBetween { blocked, x, y } => write!(f, "none_between {{{}}} {x} {y}", blocked.join(",")),
        }
    }
}

/// A nonempty disjunction of atoms.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Clause(Vec<Atom>);

impl Clause {
    pub fn new(atoms: Vec<Atom>) -> Self {
        assert!(!atoms.is_empty(), "a clause needs at least one atom");
        Clause(atoms)
    }

    pub fn atoms(&self) -> &[Atom] {
        &self.0
    }
}

impl fmt::Display for Clause {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, a) in self.0.iter().enumerate() {
            if i > 0 {
                f.write_str(" | ")?;
            }
            write!(f, "{a}")?;
        }
        Ok(())
    }
}

/// Conjunction of clauses. The empty conjunction accepts every pattern.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Default)]
pub struct ConstraintExpr {
    clauses: Vec<Clause>,
}

impl ConstraintExpr {
    pub fn new(clauses: Vec<Clause>) -> Self {
        ConstraintExpr { clauses }
    }

    pub fn clauses(&self) -> &[Clause] {
        &self.clauses
    }

    pub fn is_empty(&self) -> bool {
        self.clauses.is_empty()
    }

    pub fn and(mut self, other: ConstraintExpr) -> Self {
        self.clauses.extend(other.clauses);
        self
    }

    pub fn needs_weights(&self) -> bool {
        self.clauses
            .iter()
            .flat_map(|c| c.atoms())
            .any(|a| matches!(a, Atom::CostMax(_)))
    }

    /// Resolves symbol labels against `symbols` and weights against `weights`.
    pub fn bind(&self, symbols: &SymbolTable, weights: Option<&WeightTable>) -> Result<BoundExpr, ConstraintError> {
        let costs = match weights {
            Some(w) => Some(
                symbols
                    .iter()
                    .map(|(_, label)| (w.get(label), label.to_owned()))
                    .collect(),
            ),
            None if self.needs_weights() => return Err(ConstraintError::MissingWeights),
            None => None,
        };
        let id = |s: &String| symbols.id(s);
        let clauses = self
            .clauses
            .iter()
            .map(|c| {
                c.atoms()
                    .iter()
                    .map(|a| {
                        let bound = match a {
                            Atom::SizeMin(k) => Test::SizeMin(*k),
                            Atom::SizeMax(k) => Test::SizeMax(*k),
                            Atom::SupportMin(k) => Test::SupportMin(*k),
                            Atom::SupportMax(k) => Test::SupportMax(*k),
                            Atom::CostMax(k) => Test::CostMax(*k),
                            Atom::Contains(s) => Test::Contains(id(s)),
                            Atom::Excludes(s) => Test::Excludes(id(s)),
                            Atom::Adjacent(x, y) => Test::Adjacent(id(x), id(y)),
                            Atom::Before(x, y) => Test::NoneBetween(Vec::new(), id(x), id(y)),
                            Atom::NoneBetween { blocked, x, y } => {
                                Test::NoneBetween(blocked.iter().filter_map(id).collect(), id(x), id(y))
                            }
                        };
                        (a.clone(), bound)
                    })
                    .collect()
            })
            .collect();
        Ok(BoundExpr { clauses, costs })
    }
}

impl fmt::Display for ConstraintExpr {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, c) in self.clauses.iter().enumerate() {
            if i > 0 {
                f.write_str("\n")?;
            }
            write!(f, "{c}")?;
        }
        Ok(())
    }
}

/// Nonnegative per-symbol costs, keyed by label.
#[derive(Debug, Clone, PartialEq, Eq, Default)]
pub struct WeightTable(BTreeMap<String, u64>);

impl WeightTable {
    pub fn new() -> Self {
        WeightTable::default()
    }

    /// Returns the previous weight if `label` was already present.
    pub fn insert(&mut self, label: impl Into<String>, weight: u64) -> Option<u64> {
        self.0.insert(label.into(), weight)
    }

    pub fn get(&self, label: &str) -> Option<u64> {
        self.0.get(label).copied()
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    pub fn iter(&self) -> impl Iterator<Item = (&str, u64)> {
        self.0.iter().map(|(k, v)| (k.as_str(), *v))
    }
}

impl<S: Into<String>> FromIterator<(S, u64)> for WeightTable {
    fn from_iter<I: IntoIterator<Item = (S, u64)>>(iter: I) -> Self {
        WeightTable(iter.into_iter().map(|(k, v)| (k.into(), v)).collect())
    }
}

/// Atom with its symbols resolved; `None` marks a label absent from the dataset.
#[derive(Debug, Clone)]
enum Test {
    SizeMin(usize),
    SizeMax(usize),
    SupportMin(usize),
    SupportMax(usize),
    CostMax(u64),
    Contains(Option<SymbolId>),
    Excludes(Option<SymbolId>),
    Adjacent(Option<SymbolId>, Option<SymbolId>),
    NoneBetween(Vec<SymbolId>, Option<SymbolId>, Option<SymbolId>),
}

/// A constraint expression bound to one dataset's symbols.
#[derive(Debug, Clone)]
pub struct BoundExpr {
    clauses: Vec<Vec<(Atom, Test)>>,
    /// Weight and label per symbol id.
    costs: Option<Vec<(Option<u64>, String)>>,
}

impl BoundExpr {
    pub fn evaluate(&self, rec: &PatternRecord) -> Result<bool, ConstraintError> {
        let kind = rec.kind();
        if kind != PatternKind::Sequence {
            if let Some((atom, _)) = self.clauses.iter().flatten().find(|(a, _)| a.sequence_only()) {
                return Err(ConstraintError::KindMismatch {
                    atom: atom.to_string(),
                    kind,
                });
            }
        }
        for clause in &self.clauses {
            let mut any = false;
            for (_, test) in clause {
                if self.holds(test, rec)? {
                    any = true;
                    break;
                }
            }
            if !any {
                return Ok(false);
            }
        }
        Ok(true)
    }

    fn holds(&self, test: &Test, rec: &PatternRecord) -> Result<bool, ConstraintError> {
        Ok(match *test {
            Test::SizeMin(k) => rec.size() >= k,
            Test::SizeMax(k) => rec.size() <= k,
            Test::SupportMin(k) => rec.support >= k,
            Test::SupportMax(k) => rec.support <= k,
            Test::CostMax(budget) => self.cost(&rec.pattern)? <= budget,
            Test::Contains(s) => s.is_some_and(|s| elements(&rec.pattern).contains(&s)),
            Test::Excludes(s) => s.is_none_or(|s| !elements(&rec.pattern).contains(&s)),
            Test::Adjacent(x, y) => match (x, y, &rec.pattern) {
                (Some(x), Some(y), Pattern::Sequence(s)) => s.symbols().windows(2).any(|w| w[0] == x && w[1] == y),
                _ => false,
            },
            Test::NoneBetween(ref blocked, x, y) => match (x, y, &rec.pattern) {
                (Some(x), Some(y), Pattern::Sequence(s)) => none_between(s.symbols(), blocked, x, y),
                _ => false,
            },
        })
    }

    fn cost(&self, pattern: &Pattern) -> Result<u64, ConstraintError> {
        let costs = self.costs.as_ref().ok_or(ConstraintError::MissingWeights)?;
        elements(pattern).iter().try_fold(0u64, |acc, s| {
            let (w, label) = &costs[s.index()];
            let w = w.ok_or_else(|| ConstraintError::MissingWeight(label.clone()))?;
            Ok(acc.saturating_add(w))
        })
    }
}

/// Symbols a pattern is made of: items, sequence positions, or graph vertices.
fn elements(p: &Pattern) -> &[SymbolId] {
    match p {
        Pattern::Itemset(s) => s.items(),
        Pattern::Sequence(s) => s.symbols(),
        Pattern::Graph(g) => g.labels(),
    }
}

fn none_between(seq: &[SymbolId], blocked: &[SymbolId], x: SymbolId, y: SymbolId) -> bool {
    let mut open = false;
    for &s in seq {
        if s == y && open {
            return true;
        }
        if blocked.contains(&s) {
            open = false;
        }
        if s == x {
            open = true;
        }
    }
    false
}

pub fn evaluate(
    rec: &PatternRecord,
    expr: &ConstraintExpr,
    symbols: &SymbolTable,
    weights: Option<&WeightTable>,
) -> Result<bool, ConstraintError> {
    expr.bind(symbols, weights)?.evaluate(rec)
}

/// Splits `records` into (valid, invalid), each keeping the input order.
pub fn partition_valid(
    records: &[PatternRecord],
    expr: &ConstraintExpr,
    symbols: &SymbolTable,
    weights: Option<&WeightTable>,
) -> Result<(Vec<PatternRecord>, Vec<PatternRecord>), ConstraintError> {
    let bound = expr.bind(symbols, weights)?;
    let mut valid = Vec::new();
    let mut invalid = Vec::new();
    for r in records {
        if bound.evaluate(r)? {
            valid.push(r.clone());
        } else {
            invalid.push(r.clone());
        }
    }
    Ok((valid, invalid))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::pattern::{GraphDbBuilder, SequenceDb, TransactionDb};

    fn toy_records() -> (TransactionDb, Vec<PatternRecord>) {
        let db = TransactionDb::from_labels(&[vec!["a", "b", "d", "e"], vec!["b", "c", "e"], vec!["a", "e"]]).unwrap();
        let recs = [
            ("a", vec![1, 3]),
            ("b", vec![1, 2]),
            ("e", vec![1, 2, 3]),
            ("a e", vec![1, 3]),
            ("b e", vec![1, 2]),
        ]
        .into_iter()
        .enumerate()
        .map(|(i, (s, cover))| {
            let labels: Vec<&str> = s.split(' ').collect();
            PatternRecord::new(i + 1, Pattern::Itemset(db.itemset(&labels).unwrap()), cover)
        })
        .collect();
        (db, recs)
    }

    fn seq_record(db: &SequenceDb, s: &str) -> PatternRecord {
        let labels: Vec<&str> = s.split(' ').collect();
        PatternRecord::new(1, Pattern::Sequence(db.sequence(&labels).unwrap()), vec![1])
    }

    #[test]
    fn size_partition_on_worked_example() {
        let (db, recs) = toy_records();
        let e = parse_constraints("size >= 2").unwrap();
        let (valid, invalid) = partition_valid(&recs, &e, db.symbols(), None).unwrap();
        assert_eq!(valid.iter().map(|r| r.pid).collect::<Vec<_>>(), vec![4, 5]);
        assert_eq!(invalid.iter().map(|r| r.pid).collect::<Vec<_>>(), vec![1, 2, 3]);

        let (valid, _) = partition_valid(&recs, &ConstraintExpr::default(), db.symbols(), None).unwrap();
        assert_eq!(valid.len(), 5);
        let (valid, _) = partition_valid(&recs, &parse_constraints("size >= 10").unwrap(), db.symbols(), None).unwrap();
        assert!(valid.is_empty());
    }

    #[test]
    fn scenario_sequences() {
        let db = SequenceDb::from_labels(&[
            "bG mA ba mG ma".split(' ').collect::<Vec<_>>(),
            "bA mG ba mA ma".split(' ').collect(),
            "bUS mA ba mUS ma".split(' ').collect(),
        ])
        .unwrap();
        let e = parse_constraints("excludes bUS\nadjacent mG ma | none_between {mA,mUS} bG ma").unwrap();
        let verdicts: Vec<bool> = ["bG mA ba mG ma", "bA mG ba mA ma", "bUS mA ba mUS ma"]
            .iter()
            .map(|s| evaluate(&seq_record(&db, s), &e, db.symbols(), None).unwrap())
            .collect();
        assert_eq!(verdicts, vec![true, false, false]);
    }

    #[test]
    fn ordering_atoms() {
        let db = SequenceDb::from_labels(&["a x b y a b".split(' ').collect::<Vec<_>>()]).unwrap();
        let rec = seq_record(&db, "a x b y a b");
        let check = |t: &str| evaluate(&rec, &parse_constraints(t).unwrap(), db.symbols(), None).unwrap();
        assert!(check("adjacent a b"));
        assert!(!check("adjacent b a"));
        assert!(check("before y a"));
        assert!(!check("before y x"));
        assert!(check("none_between {x} a b"));
        assert!(check("none_between {x,y} a b"));
        assert!(check("none_between {y} x b"));
        assert!(!check("none_between {b} x y"));
        assert!(!check("before a zzz"));
        assert!(check("excludes zzz"));
        assert!(!check("contains zzz"));
    }

    #[test]
    fn blocked_endpoint_does_not_block_itself() {
        let db = SequenceDb::from_labels(&[vec!["a", "b"]]).unwrap();
        let rec = seq_record(&db, "a b");
        assert!(evaluate(
            &rec,
            &parse_constraints("none_between {a,b} a b").unwrap(),
            db.symbols(),
            None
        )
        .unwrap());
    }

    #[test]
    fn cost_sums_per_occurrence() {
        let db = SequenceDb::from_labels(&[vec!["a", "a", "b"]]).unwrap();
        let rec = seq_record(&db, "a a b");
        let w: WeightTable = [("a", 3), ("b", 5)].into_iter().collect();
        let within = |k: u64| {
            evaluate(
                &rec,
                &parse_constraints(&format!("cost <= {k}")).unwrap(),
                db.symbols(),
                Some(&w),
            )
            .unwrap()
        };
        assert!(within(11));
        assert!(!within(10));
    }

    #[test]
    fn cost_errors() {
        let (db, recs) = toy_records();
        let e = parse_constraints("cost <= 3").unwrap();
        assert_eq!(
            evaluate(&recs[0], &e, db.symbols(), None),
            Err(ConstraintError::MissingWeights)
        );
        let w: WeightTable = [("b", 1)].into_iter().collect();
        assert_eq!(
            evaluate(&recs[0], &e, db.symbols(), Some(&w)),
            Err(ConstraintError::MissingWeight("a".into()))
        );
    }

    #[test]
    fn sequence_atoms_reject_other_kinds() {
        let (db, recs) = toy_records();
        let e = parse_constraints("size >= 1 | before a e").unwrap();
        assert!(matches!(
            evaluate(&recs[3], &e, db.symbols(), None),
            Err(ConstraintError::KindMismatch {
                kind: PatternKind::Itemset,
                ..
            })
        ));
    }

    #[test]
    fn graph_contains_checks_vertex_labels() {
        let mut b = GraphDbBuilder::new();
        b.graph(&["a", "b"], &[(0, 1)]).unwrap();
        let db = b.build();
        let rec = PatternRecord::new(1, Pattern::Graph(db.graphs()[0].clone()), vec![1]);
        let e = parse_constraints("contains b, excludes c, size <= 1").unwrap();
        assert!(evaluate(&rec, &e, db.vertex_labels(), None).unwrap());
        let w: WeightTable = [("a", 2), ("b", 2)].into_iter().collect();
        assert!(!evaluate(
            &rec,
            &parse_constraints("cost <= 3").unwrap(),
            db.vertex_labels(),
            Some(&w)
        )
        .unwrap());
    }

    #[test]
    fn conjunction_splits() {
        let (db, recs) = toy_records();
        let e1 = parse_constraints("size >= 2").unwrap();
        let e2 = parse_constraints("contains a").unwrap();
        let both = e1.clone().and(e2.clone());
        for r in &recs {
            let f = |e: &ConstraintExpr| evaluate(r, e, db.symbols(), None).unwrap();
            assert_eq!(f(&both), f(&e1) && f(&e2));
        }
    }
}
