use std::collections::BTreeSet;
use std::path::PathBuf;

use clap::Args;
use patmine_core::condense::{condensed_indices, DominanceRelation};
use patmine_core::constraints::partition_valid;
use patmine_core::io::{self, decode_patterns, parse_patterns, patterns_to_string, Flags, PatternOutput};

use crate::error::Failure;
use crate::pipeline;
use crate::summary::Summary;

#[derive(Debug, Args)]
pub struct CondenseArgs {
    /// Pattern file written by `mine`.
    #[arg(long)]
    pub patterns: PathBuf,
    #[arg(long, value_name = "maximal|closed|free|skyline")]
    pub rep: DominanceRelation,
    /// Constraint file, or the constraint text itself.
    #[arg(long)]
    pub constraints: Option<String>,
    /// `SYM WEIGHT` table for `cost` constraints.
    #[arg(long)]
    pub weights: Option<PathBuf>,
    /// Pattern file to write; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
    /// Write every input pattern with its flags instead of the condensed ones only.
    #[arg(long)]
    pub all: bool,
}

pub fn run(args: &CondenseArgs) -> Result<Summary, Failure> {
    let text = io::read_text(&args.patterns)?;
    let parse_error = |e: io::ParseError| Failure::Input(format!("{}: {e}", args.patterns.display()));
    let inputs: Vec<PatternOutput> = parse_patterns(&text).map_err(parse_error)?;
    let decoded = decode_patterns(&inputs).map_err(parse_error)?;
    let expr = pipeline::constraints(args.constraints.as_deref())?;
    let weights = pipeline::weights(args.weights.as_deref())?;

    let (valid, _) = partition_valid(&decoded.records, &expr, &decoded.symbols, weights.as_ref())?;
    let kept = condensed_indices(&valid, args.rep)?;
    let valid_pids: BTreeSet<usize> = valid.iter().map(|r| r.pid).collect();
    let condensed_pids: BTreeSet<usize> = kept.iter().map(|&i| valid[i].pid).collect();

    let written: Vec<PatternOutput> = inputs
        .iter()
        .map(|o| PatternOutput {
            flags: Flags {
                valid: valid_pids.contains(&o.pid),
                condensed: condensed_pids.contains(&o.pid),
            },
            ..o.clone()
        })
        .filter(|o| args.all || o.flags.condensed)
        .collect();
    pipeline::emit(args.out.as_deref(), &patterns_to_string(&written))?;

    let mut s = Summary::new();
    s.field("input", inputs.len())
        .field("valid", valid.len())
        .field("representation", args.rep)
        .field("condensed", kept.len());
    if let Some(out) = &args.out {
        s.field("written", out.display());
    }
    Ok(s)
}
