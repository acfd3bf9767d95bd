use std::fmt;
use std::str::FromStr;
use std::sync::atomic::{AtomicUsize, Ordering};

use rayon::prelude::*;

use super::bits::Bits;
use super::{BinaryMatrix, ErrorMode, ErrorTerms, Tile, TilingError};

/// Default cap on the candidate count accepted by [`exact_select`].
pub const DEFAULT_EXACT_BOUND: usize = 20;

/// Leading candidates whose include/exclude choices become separate tasks.
const SPLIT_DEPTH: usize = 4;

/// A matrix with its candidate tiles and error mode, every rectangle
/// precomputed as a cell bit set.
pub struct TilingProblem<'a> {
    candidates: &'a [Tile],
    mode: ErrorMode,
    /// Data ones that count when left uncovered.
    target: Bits,
    /// Cells holding a zero.
    zeros: Bits,
    rects: Vec<Bits>,
    cells: usize,
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct TileSelection {
    /// Ids of the chosen tiles, ascending.
    pub chosen: Vec<usize>,
    pub terms: ErrorTerms,
}

impl TileSelection {
    pub fn k(&self) -> usize {
        self.chosen.len()
    }

    pub fn error(&self) -> usize {
        self.terms.total()
    }

    /// Ordering used to pick an optimum: error, then size, then ids.
    fn rank(&self) -> (usize, usize, &[usize]) {
        (self.error(), self.k(), &self.chosen)
    }
}

impl<'a> TilingProblem<'a> {
    pub fn new(matrix: &BinaryMatrix, candidates: &'a [Tile], mode: ErrorMode) -> Self {
        let cells = matrix.rows() * matrix.cols();
        let rects: Vec<Bits> = candidates
            .iter()
            .map(|t| {
                let mut b = Bits::zeros(cells);
                for &r in t.rows() {
                    for &c in t.cols() {
                        b.set(r * matrix.cols() + c);
                    }
                }
                b
            })
            .collect();
        let mut ones = Bits::zeros(cells);
        let mut zeros = Bits::zeros(cells);
        for r in 0..matrix.rows() {
            for c in 0..matrix.cols() {
                let bits = if matrix.get(r, c) { &mut ones } else { &mut zeros };
                bits.set(r * matrix.cols() + c);
            }
        }
        let target = match mode {
            ErrorMode::Full => ones,
            ErrorMode::Coverable => {
                let mut reach = Bits::zeros(cells);
                for r in &rects {
                    reach.union_with(r);
                }
                ones.intersection(&reach)
            }
        };
        TilingProblem {
            candidates,
            mode,
            target,
            zeros,
            rects,
            cells,
        }
    }

    pub fn candidates(&self) -> &[Tile] {
        self.candidates
    }

    pub fn mode(&self) -> ErrorMode {
        self.mode
    }

    fn terms_of(&self, union: &Bits) -> ErrorTerms {
        ErrorTerms {
            ones_outside: self.target.count_minus(union),
            zeros_inside: self.zeros.count_and(union),
        }
    }

    /// Error terms of the tiling made of the candidates at `positions`.
    pub fn evaluate(&self, positions: &[usize]) -> ErrorTerms {
        let mut union = Bits::zeros(self.cells);
        for &p in positions {
            union.union_with(&self.rects[p]);
        }
        self.terms_of(&union)
    }

    fn selection(&self, positions: &[usize], terms: ErrorTerms) -> TileSelection {
        let mut chosen: Vec<usize> = positions.iter().map(|&p| self.candidates[p].id()).collect();
        chosen.sort_unstable();
        TileSelection { chosen, terms }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum GreedyOutcome {
    /// Error is within the budget.
    Admissible(TileSelection),
    /// No remaining candidate lowers the error; holds the tiles added so far.
    Stuck(TileSelection),
}

impl GreedyOutcome {
    pub fn selection(&self) -> &TileSelection {
        match self {
            GreedyOutcome::Admissible(s) | GreedyOutcome::Stuck(s) => s,
        }
    }

    pub fn is_admissible(&self) -> bool {
        matches!(self, GreedyOutcome::Admissible(_))
    }
}

/// Adds the candidate with the largest error decrease, ties to the lowest
/// id, until the error is at most `sigma` or no candidate helps. Starts
/// from the empty tiling, which is returned as is when already admissible.
pub fn greedy_select(problem: &TilingProblem<'_>, sigma: usize) -> GreedyOutcome {
    let n = problem.candidates.len();
    let mut union = Bits::zeros(problem.cells);
    let mut used = vec![false; n];
    let mut positions = Vec::new();
    let mut terms = problem.terms_of(&union);
    loop {
        if terms.total() <= sigma {
            return GreedyOutcome::Admissible(problem.selection(&positions, terms));
        }
        let best = (0..n)
            .filter(|&p| !used[p])
            .map(|p| {
                let next = union.union(&problem.rects[p]);
                let t = problem.terms_of(&next);
                ((t.total(), problem.candidates[p].id()), p, next, t)
            })
            .min_by(|a, b| a.0.cmp(&b.0));
        match best {
            Some(((err, _), p, next, t)) if err < terms.total() => {
                used[p] = true;
                positions.push(p);
                union = next;
                terms = t;
            }
            _ => return GreedyOutcome::Stuck(problem.selection(&positions, terms)),
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum SearchMode {
    /// Some admissible selection.
    First,
    /// Every admissible selection, ordered by size and then ids.
    All,
    /// The admissible selection with the least error; ties go to fewer
    /// tiles, then to the lexicographically smallest ids.
    Optimal,
}

impl SearchMode {
    pub fn as_str(self) -> &'static str {
        match self {
            SearchMode::First => "first",
            SearchMode::All => "all",
            SearchMode::Optimal => "optimal",
        }
    }
}

impl fmt::Display for SearchMode {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for SearchMode {
    type Err = TilingError;

    fn from_str(s: &str) -> Result<Self, Self::Err> {
        [SearchMode::First, SearchMode::All, SearchMode::Optimal]
            .into_iter()
            .find(|m| m.as_str() == s)
            .ok_or_else(|| TilingError::UnknownName {
                what: "search mode",
                value: s.to_owned(),
            })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct ExactOutcome {
    pub mode: SearchMode,
    /// Empty exactly when no nonempty selection has error `<= sigma`.
    pub selections: Vec<TileSelection>,
}

impl ExactOutcome {
    pub fn is_unsatisfiable(&self) -> bool {
        self.selections.is_empty()
    }
}

/// Complete search over nonempty candidate subsets with error at most `sigma`.
///
/// Branch and bound: a partial choice over the first `i` candidates cannot
/// end below its current zeros inside plus the ones left outside even when
/// every remaining candidate is added.
pub fn exact_select(
    problem: &TilingProblem<'_>,
    sigma: usize,
    mode: SearchMode,
    bound: usize,
) -> Result<ExactOutcome, TilingError> {
    let n = problem.candidates.len();
    if n > bound {
        return Err(TilingError::TooManyCandidates { n, bound });
    }
    let mut suffix = vec![Bits::zeros(problem.cells); n + 1];
    for i in (0..n).rev() {
        suffix[i] = suffix[i + 1].union(&problem.rects[i]);
    }
    let best = AtomicUsize::new(usize::MAX);
    let prefixes = prefix_choices(SPLIT_DEPTH.min(n));

    let per_task: Vec<Vec<TileSelection>> = prefixes
        .par_iter()
        .map(|prefix| {
            let mut s = Search {
                problem,
                suffix: &suffix,
                sigma,
                mode,
                best: &best,
                prefix,
                found: Vec::new(),
                done: false,
            };
            s.visit(0, &Bits::zeros(problem.cells), &mut Vec::new());
            s.found
        })
        .collect();

    let selections = match mode {
        SearchMode::First => per_task.into_iter().find(|f| !f.is_empty()).unwrap_or_default(),
        SearchMode::All => {
            let mut all: Vec<TileSelection> = per_task.into_iter().flatten().collect();
            all.sort_by(|a, b| (a.k(), &a.chosen).cmp(&(b.k(), &b.chosen)));
            all
        }
        SearchMode::Optimal => per_task
            .into_iter()
            .flatten()
            .min_by(|a, b| a.rank().cmp(&b.rank()))
            .into_iter()
            .collect(),
    };
    Ok(ExactOutcome { mode, selections })
}

/// All include/exclude assignments of the first `depth` candidates, in the
/// order a depth-first search that tries inclusion first would meet them.
fn prefix_choices(depth: usize) -> Vec<Vec<bool>> {
    let mut out = vec![Vec::new()];
    for _ in 0..depth {
        out = out
            .into_iter()
            .flat_map(|p| {
                let mut with = p.clone();
                with.push(true);
                let mut without = p;
                without.push(false);
                [with, without]
            })
            .collect();
    }
    out
}

struct Search<'s, 'p> {
    problem: &'s TilingProblem<'p>,
    suffix: &'s [Bits],
    sigma: usize,
    mode: SearchMode,
    best: &'s AtomicUsize,
    prefix: &'s [bool],
    found: Vec<TileSelection>,
    done: bool,
}

impl Search<'_, '_> {
    fn visit(&mut self, i: usize, union: &Bits, positions: &mut Vec<usize>) {
        if self.done {
            return;
        }
        let p = self.problem;
        let zeros_inside = p.zeros.count_and(union);
        let lower = zeros_inside + p.target.count_minus_both(union, &self.suffix[i]);
        let limit = match self.mode {
            SearchMode::Optimal => self.sigma.min(self.best.load(Ordering::Relaxed)),
            _ => self.sigma,
        };
        if lower > limit {
            return;
        }
        if i == p.candidates.len() {
            if positions.is_empty() {
                return;
            }
            let terms = ErrorTerms {
                ones_outside: p.target.count_minus(union),
                zeros_inside,
            };
            let sel = p.selection(positions, terms);
            match self.mode {
                SearchMode::First => {
                    self.found.push(sel);
                    self.done = true;
                }
                SearchMode::All => self.found.push(sel),
                SearchMode::Optimal => {
                    self.best.fetch_min(terms.total(), Ordering::Relaxed);
                    if self.found.first().is_none_or(|cur| sel.rank() < cur.rank()) {
                        self.found = vec![sel];
                    }
                }
            }
            return;
        }
        let forced = self.prefix.get(i).copied();
        if forced != Some(false) {
            positions.push(i);
            self.visit(i + 1, &union.union(&p.rects[i]), positions);
            positions.pop();
        }
        if forced != Some(true) {
            self.visit(i + 1, union, positions);
        }
    }
}
