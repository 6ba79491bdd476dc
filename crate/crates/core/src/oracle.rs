//! Brute-force enumeration of match decompositions.
//!
//! Every way of cutting each sentence into the alternating
//! `S1 D1 ... Dn Sn+1` shape is generated, the two sides are paired up when
//! their similarity runs agree, and each pairing is filtered through
//! [`is_valid_decomposition`]. Exponential; only for cross-checking
//! [`crate::matcher::match_tokens`] on short inputs.

use std::collections::HashMap;

use crate::lexrep::{Sentence, Token};
use crate::matcher::{Difference, MatchError, MatchSequence};

/// Combined token count above which the oracle refuses to run.
pub const ORACLE_TOKEN_LIMIT: usize = 16;

/// All constraint-satisfying decompositions of `a` against `b`.
pub fn match_oracle(a: &Sentence, b: &Sentence) -> Result<Vec<MatchSequence>, MatchError> {
    if a.side() != b.side() {
        return Err(MatchError::CrossLanguage(a.side(), b.side()));
    }
    oracle_tokens(a.tokens(), b.tokens())
}

pub fn oracle_tokens(a: &[Token], b: &[Token]) -> Result<Vec<MatchSequence>, MatchError> {
    let total = a.len() + b.len();
    if total > ORACLE_TOKEN_LIMIT {
        return Err(MatchError::OracleTooLarge(total));
    }

    // Side b cuts, keyed by (number of differences, similarity contents).
    let mut by_shape: HashMap<(usize, Vec<&[Token]>), Vec<Cut>> = HashMap::new();
    for cut in segmentations(b.len()) {
        let key = (
            cut.diffs.len(),
            cut.sims.iter().map(|&(s, e)| &b[s..e]).collect(),
        );
        by_shape.entry(key).or_default().push(cut);
    }

    let mut out = Vec::new();
    for cut_a in segmentations(a.len()) {
        let key = (
            cut_a.diffs.len(),
            cut_a
                .sims
                .iter()
                .map(|&(s, e)| &a[s..e])
                .collect::<Vec<_>>(),
        );
        let Some(partners) = by_shape.get(&key) else {
            continue;
        };
        for cut_b in partners {
            let similarities = cut_a.sims.iter().map(|&(s, e)| a[s..e].to_vec()).collect();
            let differences = cut_a
                .diffs
                .iter()
                .zip(&cut_b.diffs)
                .map(|(&(s1, e1), &(s2, e2))| {
                    Difference::new_unchecked(a[s1..e1].to_vec(), b[s2..e2].to_vec())
                })
                .collect();
            let m = MatchSequence::from_parts(similarities, differences);
            if is_valid_decomposition(&m, a, b) {
                out.push(m);
            }
        }
    }
    Ok(out)
}

/// Checks every match-sequence constraint of `m` against its two inputs.
pub fn is_valid_decomposition(m: &MatchSequence, a: &[Token], b: &[Token]) -> bool {
    let sims = m.similarities();
    let diffs = m.differences();
    let n = diffs.len();
    if sims.len() != n + 1 {
        return false;
    }
    if n == 0 && a != b {
        return false;
    }
    for d in diffs {
        if d.first().is_empty() || d.second().is_empty() {
            return false;
        }
        if d.first().iter().any(|t| d.second().contains(t)) {
            return false;
        }
    }
    for (k, sim) in sims.iter().enumerate() {
        if k > 0 && k < n && sim.is_empty() {
            return false;
        }
        if sim.iter().any(|t| diffs[..k].iter().any(|d| d.contains(t))) {
            return false;
        }
    }
    m.reconstruct_first() == a && m.reconstruct_second() == b
}

/// Half-open index ranges of one sentence's similarity and difference pieces.
#[derive(Debug, Clone)]
struct Cut {
    sims: Vec<(usize, usize)>,
    diffs: Vec<(usize, usize)>,
}

/// Every cut of `len` tokens into `S1 D1 ... Dn Sn+1` (n >= 0) with non-empty
/// differences and non-empty interior similarities.
fn segmentations(len: usize) -> Vec<Cut> {
    let mut out = Vec::new();
    // n = 0: the whole sentence is one similarity.
    out.push(Cut {
        sims: vec![(0, len)],
        diffs: vec![],
    });
    for s1_end in 0..len {
        let mut cut = Cut {
            sims: vec![(0, s1_end)],
            diffs: vec![],
        };
        extend_with_difference(s1_end, len, &mut cut, &mut out);
    }
    out
}

/// Appends a difference starting at `start`, then a similarity (trailing or
/// interior), recursively.
fn extend_with_difference(start: usize, len: usize, cut: &mut Cut, out: &mut Vec<Cut>) {
    for d_end in start + 1..=len {
        cut.diffs.push((start, d_end));
        for s_end in d_end..=len {
            cut.sims.push((d_end, s_end));
            if s_end == len {
                out.push(cut.clone());
            } else if s_end > d_end {
                extend_with_difference(s_end, len, cut, out);
            }
            cut.sims.pop();
        }
        cut.diffs.pop();
    }
}
