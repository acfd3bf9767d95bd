use rayon::prelude::*;

use super::{MinSupport, MiningError};
use crate::pattern::{Pattern, PatternRecord, Sequence, SequenceDb, SymbolId};

/// One projected suffix: 0-based sequence index and the first unconsumed position.
type Projection = Vec<(usize, usize)>;

/// Prefix-growth enumeration over pseudo-projected suffixes (PrefixSpan).
///
/// Support counts sequences, not embeddings. `max_len` caps pattern length;
/// without it the output can be exponential in the sequence lengths.
pub fn mine_frequent_sequences(
    db: &SequenceDb,
    minsup: MinSupport,
    max_len: Option<usize>,
) -> Result<Vec<PatternRecord>, MiningError> {
    if db.is_empty() {
        return Err(MiningError::EmptyDatabase);
    }
    if max_len == Some(0) {
        return Err(MiningError::InvalidLimit("max_len"));
    }
    let sigma = minsup.threshold(db.len());
    if sigma > db.len() {
        return Ok(Vec::new());
    }
    let miner = Miner {
        sequences: db.sequences(),
        sigma,
        max_len: max_len.unwrap_or(usize::MAX),
        alphabet: db.symbols().len(),
    };
    let root: Projection = (0..db.len()).map(|i| (i, 0)).collect();
    let firsts = miner.extensions(&root);

    let mut found: Vec<(Vec<SymbolId>, Vec<usize>)> = firsts
        .into_par_iter()
        .flat_map_iter(|(sym, proj)| {
            let mut out = Vec::new();
            let mut prefix = vec![sym];
            miner.grow(&mut prefix, proj, &mut out);
            out
        })
        .collect();

    found.sort_unstable_by(|a, b| a.0.len().cmp(&b.0.len()).then_with(|| a.0.cmp(&b.0)));
    Ok(found
        .into_iter()
        .enumerate()
        .map(|(i, (symbols, sids))| {
            let cover = sids.into_iter().map(|s| s + 1).collect();
            let seq = Sequence::new(symbols).expect("prefix is nonempty");
            PatternRecord::new(i + 1, Pattern::Sequence(seq), cover)
        })
        .collect())
}

struct Miner<'a> {
    sequences: &'a [Sequence],
    sigma: usize,
    max_len: usize,
    alphabet: usize,
}

impl Miner<'_> {
    fn grow(&self, prefix: &mut Vec<SymbolId>, proj: Projection, out: &mut Vec<(Vec<SymbolId>, Vec<usize>)>) {
        let sids = proj.iter().map(|&(s, _)| s).collect();
        out.push((prefix.clone(), sids));
        if prefix.len() >= self.max_len {
            return;
        }
        for (sym, next) in self.extensions(&proj) {
            prefix.push(sym);
            self.grow(prefix, next, out);
            prefix.pop();
        }
    }

    /// Frequent single-symbol extensions of a projection, ascending by symbol id.
    fn extensions(&self, proj: &Projection) -> Vec<(SymbolId, Projection)> {
        let mut counts = vec![0usize; self.alphabet];
        let mut last_seen = vec![usize::MAX; self.alphabet];
        for &(sid, start) in proj {
            for &sym in &self.sequences[sid].symbols()[start..] {
                if last_seen[sym.index()] != sid {
                    last_seen[sym.index()] = sid;
                    counts[sym.index()] += 1;
                }
            }
        }
        counts
            .iter()
            .enumerate()
            .filter(|&(_, &c)| c >= self.sigma)
            .map(|(i, _)| {
                let sym = SymbolId(i as u32);
                let next = proj
                    .iter()
                    .filter_map(|&(sid, start)| {
                        self.sequences[sid].symbols()[start..]
                            .iter()
                            .position(|&s| s == sym)
                            .map(|off| (sid, start + off + 1))
                    })
                    .collect();
                (sym, next)
            })
            .collect()
    }
}
