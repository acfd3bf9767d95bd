use std::path::{Path, PathBuf};

use clap::ValueEnum;
use patmine_core::constraints::{partition_valid, ConstraintExpr, WeightTable};
use patmine_core::io::{self, Flags, PatternOutput};
use patmine_core::mining::{
    mine_frequent_graphs_general, mine_frequent_graphs_unique, mine_frequent_itemsets, mine_frequent_sequences,
    MinSupport,
};
use patmine_core::pattern::{GraphDb, PatternRecord, SequenceDb, SymbolTable, TransactionDb};

use crate::error::Failure;

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DataType {
    Itemset,
    Sequence,
    /// Unique-labelled graphs mined as edge sets, connected or not.
    GraphUnique,
    /// Connected subgraphs of arbitrary labelled graphs.
    Graph,
}

pub enum Dataset {
    Transactions(TransactionDb),
    Sequences(SequenceDb),
    Graphs(GraphDb),
}

impl Dataset {
    pub fn load(kind: DataType, path: &Path) -> Result<Dataset, Failure> {
        Ok(match kind {
            DataType::Itemset => Dataset::Transactions(io::load_transactions(path)?),
            DataType::Sequence => Dataset::Sequences(io::load_sequences(path)?),
            DataType::GraphUnique | DataType::Graph => Dataset::Graphs(io::load_graphs(path)?),
        })
    }

    pub fn len(&self) -> usize {
        match self {
            Dataset::Transactions(db) => db.len(),
            Dataset::Sequences(db) => db.len(),
            Dataset::Graphs(db) => db.len(),
        }
    }

    /// Items, sequence symbols or vertex labels.
    pub fn symbols(&self) -> &SymbolTable {
        match self {
            Dataset::Transactions(db) => db.symbols(),
            Dataset::Sequences(db) => db.symbols(),
            Dataset::Graphs(db) => db.vertex_labels(),
        }
    }

    pub fn edge_labels(&self) -> SymbolTable {
        match self {
            Dataset::Graphs(db) => db.edge_labels().clone(),
            _ => SymbolTable::for_edge_labels(),
        }
    }
}

/// Length caps for the miners that accept one.
#[derive(Debug, Clone, Copy, Default)]
pub struct Limits {
    pub max_len: Option<usize>,
    pub max_edges: Option<usize>,
}

impl Limits {
    pub fn check(&self, kind: DataType) -> Result<(), Failure> {
        if self.max_len.is_some() && kind != DataType::Sequence {
            return Err(Failure::Usage("--max-len applies to --type sequence only".into()));
        }
        if self.max_edges.is_some() && kind != DataType::Graph {
            return Err(Failure::Usage("--max-edges applies to --type graph only".into()));
        }
        Ok(())
    }
}

pub fn mine(kind: DataType, data: &Dataset, minsup: MinSupport, limits: Limits) -> Result<Vec<PatternRecord>, Failure> {
    Ok(match (kind, data) {
        (DataType::Itemset, Dataset::Transactions(db)) => mine_frequent_itemsets(db, minsup)?,
        (DataType::Sequence, Dataset::Sequences(db)) => mine_frequent_sequences(db, minsup, limits.max_len)?,
        (DataType::GraphUnique, Dataset::Graphs(db)) => mine_frequent_graphs_unique(db, minsup)?,
        (DataType::Graph, Dataset::Graphs(db)) => mine_frequent_graphs_general(db, minsup, limits.max_edges)?,
        _ => unreachable!("datasets are loaded for their data type"),
    })
}

/// `--constraints` takes a file path or, when no such file exists, the
/// constraint text itself.
pub fn constraints(arg: Option<&str>) -> Result<ConstraintExpr, Failure> {
    let Some(arg) = arg else {
        return Ok(ConstraintExpr::new(Vec::new()));
    };
    let path = PathBuf::from(arg);
    if path.is_file() {
        Ok(io::load_constraints(&path)?)
    } else {
        patmine_core::constraints::parse_constraints(arg)
            .map_err(|e| Failure::Input(format!("constraints `{arg}`: {e}")))
    }
}

pub fn weights(path: Option<&Path>) -> Result<Option<WeightTable>, Failure> {
    path.map(io::load_weights).transpose().map_err(Failure::from)
}

pub fn split_valid(
    records: &[PatternRecord],
    expr: &ConstraintExpr,
    symbols: &SymbolTable,
    weights: Option<&WeightTable>,
) -> Result<Vec<PatternRecord>, Failure> {
    Ok(partition_valid(records, expr, symbols, weights)?.0)
}

pub fn outputs(
    records: &[PatternRecord],
    symbols: &SymbolTable,
    edge_labels: &SymbolTable,
    flags: Flags,
) -> Vec<PatternOutput> {
    records
        .iter()
        .map(|r| PatternOutput::from_record(r, symbols, edge_labels, flags))
        .collect()
}

/// Writes to `out`, or to standard output when no path is given.
pub fn emit(out: Option<&Path>, text: &str) -> Result<(), Failure> {
    match out {
        Some(p) => Ok(io::write_text(p, text)?),
        None => {
            print!("{text}");
            Ok(())
        }
    }
}
