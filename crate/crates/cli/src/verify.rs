use std::path::PathBuf;

use clap::Args;
use patmine_core::condense::{brute_force_condense, condense, DominanceRelation, DEFAULT_ORACLE_BOUND};
use patmine_core::io::{Elements, Flags, PatternOutput};
use patmine_core::mining::MinSupport;
use patmine_core::oracle;
use patmine_core::pattern::{graph_from_edge_items, Itemset, Pattern, PatternRecord, Sequence, SymbolTable};

use crate::error::Failure;
use crate::pipeline::{self, DataType, Dataset, Limits};
use crate::summary::Summary;

#[derive(Debug, Args)]
pub struct VerifyArgs {
    #[arg(long = "type", value_enum)]
    pub kind: DataType,
    #[arg(long)]
    pub input: PathBuf,
    #[arg(long)]
    pub minsup: MinSupport,
    #[arg(long, value_name = "maximal|closed|free|skyline")]
    pub rep: DominanceRelation,
    /// Constraint file, or the constraint text itself.
    #[arg(long)]
    pub constraints: Option<String>,
    #[arg(long)]
    pub weights: Option<PathBuf>,
    #[arg(long)]
    pub max_len: Option<usize>,
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Largest valid set the brute-force condensation accepts.
    #[arg(long, default_value_t = DEFAULT_ORACLE_BOUND)]
    pub bound: usize,
}

/// Brute-force enumeration of the frequent patterns, as records.
fn enumerate(kind: DataType, data: &Dataset, sigma: usize, limits: Limits) -> Result<Vec<PatternRecord>, Failure> {
    let patterns: Vec<(Pattern, Vec<usize>)> = match data {
        Dataset::Transactions(db) => oracle::frequent_itemsets(db, sigma)?
            .into_iter()
            .map(|(ids, cover)| (Pattern::Itemset(Itemset::new(ids).expect("nonempty")), cover))
            .collect(),
        Dataset::Sequences(db) => oracle::frequent_sequences(db, sigma, limits.max_len)?
            .into_iter()
            .map(|(ids, cover)| (Pattern::Sequence(Sequence::new(ids).expect("nonempty")), cover))
            .collect(),
        Dataset::Graphs(db) if kind == DataType::GraphUnique => {
            if let Some(gid) = db
                .graphs()
                .iter()
                .position(|g| !patmine_core::pattern::is_unique_labeled(g))
            {
                return Err(Failure::Input(format!("graph {} is not unique-labeled", gid + 1)));
            }
            oracle::frequent_edge_sets(db, sigma)?
                .into_iter()
                .map(|(items, cover)| {
                    (
                        Pattern::Graph(graph_from_edge_items(&items).expect("nonempty edge set")),
                        cover,
                    )
                })
                .collect()
        }
        Dataset::Graphs(db) => oracle::frequent_connected_subgraphs(db, sigma, limits.max_edges)?
            .into_iter()
            .map(|(g, cover)| (Pattern::Graph(g), cover))
            .collect(),
    };
    Ok(patterns
        .into_iter()
        .enumerate()
        .map(|(i, (p, cover))| PatternRecord::new(i + 1, p, cover))
        .collect())
}

fn same(a: &PatternRecord, b: &PatternRecord) -> bool {
    a.cover == b.cover
        && match (&a.pattern, &b.pattern) {
            (Pattern::Graph(g), Pattern::Graph(h)) => oracle::is_isomorphic(g, h),
            (p, q) => p == q,
        }
}

/// Records of `a` with no counterpart in `b`.
fn missing<'a>(a: &'a [PatternRecord], b: &[PatternRecord]) -> Vec<&'a PatternRecord> {
    a.iter().filter(|p| !b.iter().any(|q| same(p, q))).collect()
}

fn render(rec: &PatternRecord, symbols: &SymbolTable, edge_labels: &SymbolTable) -> String {
    let out = PatternOutput::from_record(rec, symbols, edge_labels, Flags::default());
    let body = match out.elements {
        Elements::Symbols(s) => s.join(" "),
        Elements::Graph(g) => g
            .edges
            .iter()
            .map(|(u, v, l)| format!("{}-{}:{l}", g.vertices[*u], g.vertices[*v]))
            .collect::<Vec<_>>()
            .join(" "),
    };
    format!("{} [{body}] cover {:?}", out.kind, rec.cover)
}

pub fn run(args: &VerifyArgs) -> Result<Summary, Failure> {
    let limits = Limits {
        max_len: args.max_len,
        max_edges: args.max_edges,
    };
    limits.check(args.kind)?;
    let data = Dataset::load(args.kind, &args.input)?;
    let expr = pipeline::constraints(args.constraints.as_deref())?;
    let weights = pipeline::weights(args.weights.as_deref())?;
    let sigma = args.minsup.threshold(data.len());

    let mined = pipeline::mine(args.kind, &data, args.minsup, limits)?;
    let valid = pipeline::split_valid(&mined, &expr, data.symbols(), weights.as_ref())?;
    let condensed = condense(&valid, args.rep)?;

    let expected = enumerate(args.kind, &data, sigma, limits)?;
    let expected_valid = pipeline::split_valid(&expected, &expr, data.symbols(), weights.as_ref())?;
    let expected_condensed = brute_force_condense(&expected_valid, args.rep, args.bound)?;

    let edge_labels = data.edge_labels();
    let mut diff = Vec::new();
    for (stage, got, want) in [
        ("frequent", &mined, &expected),
        ("condensed", &condensed, &expected_condensed),
    ] {
        for r in missing(want, got) {
            diff.push(format!("{stage}: missing {}", render(r, data.symbols(), &edge_labels)));
        }
        for r in missing(got, want) {
            diff.push(format!(
                "{stage}: unexpected {}",
                render(r, data.symbols(), &edge_labels)
            ));
        }
    }

    let mut s = Summary::new();
    s.field("threshold", sigma)
        .field("frequent", format!("{} (oracle {})", mined.len(), expected.len()))
        .field("valid", format!("{} (oracle {})", valid.len(), expected_valid.len()))
        .field(
            &format!("{} condensed", args.rep),
            format!("{} (oracle {})", condensed.len(), expected_condensed.len()),
        );
    let agree = diff.is_empty() && mined.len() == expected.len() && condensed.len() == expected_condensed.len();
    if agree {
        s.field("result", "identical");
        Ok(s)
    } else {
        s.field("result", "differs");
        for d in diff {
            s.line(d);
        }
        Err(Failure::Negative(s.to_string()))
    }
}
