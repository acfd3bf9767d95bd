use std::path::PathBuf;

use clap::{Args, ValueEnum};
use patmine_core::io::{self, tiling_report_to_string, TilingSummary};
use patmine_core::tiling::{
    exact_select, generate_candidates, greedy_select, ErrorMode, SearchMode, TileSelection, TilingProblem,
    DEFAULT_EXACT_BOUND,
};

use crate::error::Failure;
use crate::pipeline;
use crate::summary::{table, Summary};

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum Method {
    /// Add the most helpful candidate until the budget is met.
    Greedy,
    /// Any admissible nonempty selection.
    First,
    /// Every admissible nonempty selection.
    All,
    /// The admissible selection with the least error.
    Optimal,
}

#[derive(Debug, Args)]
pub struct TileArgs {
    /// Rows of space-separated 0/1 cells.
    #[arg(long)]
    pub matrix: PathBuf,
    /// Error budget.
    #[arg(long)]
    pub threshold: usize,
    /// Confidence threshold for candidate generation, in (0, 1].
    #[arg(long, default_value_t = 0.5)]
    pub tau: f64,
    #[arg(long, default_value_t = DEFAULT_EXACT_BOUND)]
    pub max_candidates: usize,
    #[arg(long, value_enum, default_value_t = Method::Greedy)]
    pub method: Method,
    #[arg(long, value_name = "full|coverable", default_value_t = ErrorMode::Coverable)]
    pub error_mode: ErrorMode,
    /// Candidate tiles as JSON lines of `{"rows": [..], "cols": [..]}`,
    /// used instead of generated ones.
    #[arg(long)]
    pub candidates: Option<PathBuf>,
    /// Largest candidate count the exact methods accept.
    #[arg(long, default_value_t = DEFAULT_EXACT_BOUND)]
    pub bound: usize,
    /// Report file to write; standard output when omitted.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

const SHOWN: usize = 10;

pub fn run(args: &TileArgs) -> Result<Summary, Failure> {
    let matrix = io::load_matrix(&args.matrix)?;
    let candidates = match &args.candidates {
        Some(path) => io::load_candidates(path, &matrix)?,
        None => generate_candidates(&matrix, args.tau, args.max_candidates)?,
    };
    let problem = TilingProblem::new(&matrix, &candidates, args.error_mode);

    let (status, selections): (&str, Vec<TileSelection>) = match args.method {
        Method::Greedy => {
            let outcome = greedy_select(&problem, args.threshold);
            let status = if outcome.is_admissible() { "admissible" } else { "stuck" };
            (status, vec![outcome.selection().clone()])
        }
        method => {
            let mode = match method {
                Method::First => SearchMode::First,
                Method::All => SearchMode::All,
                _ => SearchMode::Optimal,
            };
            let outcome = exact_select(&problem, args.threshold, mode, args.bound)?;
            let status = if outcome.is_unsatisfiable() {
                "unsatisfiable"
            } else {
                "admissible"
            };
            (status, outcome.selections)
        }
    };

    let report = TilingSummary {
        method: format!("{:?}", args.method).to_lowercase(),
        error_mode: args.error_mode.to_string(),
        threshold: args.threshold,
        candidates: candidates.len(),
        status: status.to_owned(),
        solutions: if status == "admissible" { selections.len() } else { 0 },
    };
    let listed = if status == "admissible" {
        &selections[..]
    } else {
        &[][..]
    };
    pipeline::emit(args.out.as_deref(), &tiling_report_to_string(&report, listed))?;

    let mut s = Summary::new();
    s.field(
        "matrix",
        format!("{} x {}, {} ones", matrix.rows(), matrix.cols(), matrix.count_ones()),
    )
    .field("candidates", candidates.len())
    .field("method", &report.method)
    .field("error mode", &report.error_mode)
    .field("threshold", args.threshold)
    .field("status", status)
    .field("solutions", report.solutions);
    if status == "stuck" {
        let sel = &selections[0];
        s.field("greedy stopped at", format!("k {}, error {}", sel.k(), sel.error()));
    }
    if let Some(out) = &args.out {
        s.field("written", out.display());
    }
    let rows: Vec<Vec<String>> = listed
        .iter()
        .take(SHOWN)
        .map(|sel| {
            vec![
                sel.k().to_string(),
                sel.error().to_string(),
                sel.terms.ones_outside.to_string(),
                sel.terms.zeros_inside.to_string(),
                sel.chosen.iter().map(usize::to_string).collect::<Vec<_>>().join(" "),
            ]
        })
        .collect();
    if !rows.is_empty() {
        for line in table(&["k", "error", "ones outside", "zeros inside", "tiles"], &rows) {
            s.line(line);
        }
        if listed.len() > SHOWN {
            s.line(format!("... {} more", listed.len() - SHOWN));
        }
    }
    if status != "admissible" {
        return Err(Failure::Negative(format!(
            "{s}no tiling within error {}",
            args.threshold
        )));
    }
    Ok(s)
}
