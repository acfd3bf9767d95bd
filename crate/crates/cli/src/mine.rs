use std::path::PathBuf;

use clap::Args;
use patmine_core::io::{patterns_to_string, Flags};
use patmine_core::mining::MinSupport;

use crate::error::Failure;
use crate::pipeline::{self, DataType, Dataset, Limits};
use crate::summary::Summary;

#[derive(Debug, Args)]
pub struct MineArgs {
    #[arg(long = "type", value_enum)]
    pub kind: DataType,
    #[arg(long)]
    pub input: PathBuf,
    /// Integer for an absolute count, decimal in (0, 1] for a fraction of the records.
    #[arg(long)]
    pub minsup: MinSupport,
    /// Longest sequence pattern to report.
    #[arg(long)]
    pub max_len: Option<usize>,
    /// Largest general graph pattern to report, in edges.
    #[arg(long)]
    pub max_edges: Option<usize>,
    /// Pattern file to write; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

pub fn run(args: &MineArgs) -> Result<Summary, Failure> {
    let limits = Limits {
        max_len: args.max_len,
        max_edges: args.max_edges,
    };
    limits.check(args.kind)?;
    let data = Dataset::load(args.kind, &args.input)?;
    let records = pipeline::mine(args.kind, &data, args.minsup, limits)?;
    let outputs = pipeline::outputs(&records, data.symbols(), &data.edge_labels(), Flags::default());
    pipeline::emit(args.out.as_deref(), &patterns_to_string(&outputs))?;

    let mut s = Summary::new();
    s.field("records", data.len())
        .field("threshold", args.minsup.threshold(data.len()))
        .field("patterns", records.len());
    if let Some(out) = &args.out {
        s.field("written", out.display());
    }
    Ok(s)
}
