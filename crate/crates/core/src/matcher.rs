//! Similarity/difference match sequences between two same-language sentences.
//!
//! A match sequence has the shape `S1 D1 S2 ... Dn Sn+1`. Each `Si` is a run
//! shared by both sentences, each `Di` is a pair of non-empty runs (one per
//! sentence) with no token in common. Interior similarities are non-empty and
//! a similarity may not reuse a token from any earlier difference. Under those
//! constraints a pair of sentences either has exactly one decomposition or is
//! treated as unmatched.

use std::collections::HashMap;
use std::fmt;

use thiserror::Error;

use crate::lexrep::{render_tokens, Sentence, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum MatchError {
    #[error("cross-language match ({0} vs {1})")]
    CrossLanguage(crate::Side, crate::Side),
    #[error("oracle input too large ({0} tokens, limit {limit})", limit = crate::oracle::ORACLE_TOKEN_LIMIT)]
    OracleTooLarge(usize),
}

/// A pair of non-empty, token-disjoint runs occupying the same slot.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Difference {
    first: Vec<Token>,
    second: Vec<Token>,
}

impl Difference {
    pub(crate) fn new(first: Vec<Token>, second: Vec<Token>) -> Difference {
        debug_assert!(!first.is_empty() && !second.is_empty());
        debug_assert!(first.iter().all(|t| !second.contains(t)));
        Difference { first, second }
    }

    /// For candidates that are validated afterwards.
    pub(crate) fn new_unchecked(first: Vec<Token>, second: Vec<Token>) -> Difference {
        Difference { first, second }
    }

    /// The run taken from the first sentence.
    pub fn first(&self) -> &[Token] {
        &self.first
    }

    /// The run taken from the second sentence.
    pub fn second(&self) -> &[Token] {
        &self.second
    }

    pub fn swapped(&self) -> Difference {
        Difference {
            first: self.second.clone(),
            second: self.first.clone(),
        }
    }

    pub(crate) fn contains(&self, token: &Token) -> bool {
        self.first.contains(token) || self.second.contains(token)
    }
}

impl fmt::Display for Difference {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(
            f,
            "{} : {}",
            render_tokens(&self.first),
            render_tokens(&self.second)
        )
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct MatchSequence {
    similarities: Vec<Vec<Token>>,
    differences: Vec<Difference>,
}

impl MatchSequence {
    pub(crate) fn from_parts(
        similarities: Vec<Vec<Token>>,
        differences: Vec<Difference>,
    ) -> MatchSequence {
        debug_assert_eq!(similarities.len(), differences.len() + 1);
        MatchSequence {
            similarities,
            differences,
        }
    }

    /// All `n + 1` similarity slots, including empty leading/trailing ones.
    pub fn similarities(&self) -> &[Vec<Token>] {
        &self.similarities
    }

    pub fn differences(&self) -> &[Difference] {
        &self.differences
    }

    pub fn difference_count(&self) -> usize {
        self.differences.len()
    }

    /// Number of non-empty similarity runs.
    pub fn similarity_count(&self) -> usize {
        self.similarities.iter().filter(|s| !s.is_empty()).count()
    }

    /// Rebuilds the first sentence by interleaving similarities with `Di.first`.
    pub fn reconstruct_first(&self) -> Vec<Token> {
        self.reconstruct(Difference::first)
    }

    /// Rebuilds the second sentence by interleaving similarities with `Di.second`.
    pub fn reconstruct_second(&self) -> Vec<Token> {
        self.reconstruct(Difference::second)
    }

    fn reconstruct(&self, pick: fn(&Difference) -> &[Token]) -> Vec<Token> {
        let mut out = Vec::new();
        for (i, sim) in self.similarities.iter().enumerate() {
            out.extend_from_slice(sim);
            if let Some(d) = self.differences.get(i) {
                out.extend_from_slice(pick(d));
            }
        }
        out
    }

    /// The match sequence of the same two sentences taken in the other order.
    pub fn swapped(&self) -> MatchSequence {
        MatchSequence {
            similarities: self.similarities.clone(),
            differences: self.differences.iter().map(Difference::swapped).collect(),
        }
    }
}

/// `[it is a] · book : pencil`; empty similarity slots are omitted.
impl fmt::Display for MatchSequence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut blocks = Vec::new();
        for (i, sim) in self.similarities.iter().enumerate() {
            if !sim.is_empty() {
                blocks.push(format!("[{}]", render_tokens(sim)));
            }
            if let Some(d) = self.differences.get(i) {
                blocks.push(d.to_string());
            }
        }
        f.write_str(&blocks.join(" · "))
    }
}

/// Computes the unique match sequence of two sentences of the same language.
///
/// Returns `Ok(None)` when no decomposition exists or when more than one does.
pub fn match_sentences(a: &Sentence, b: &Sentence) -> Result<Option<MatchSequence>, MatchError> {
    if a.side() != b.side() {
        return Err(MatchError::CrossLanguage(a.side(), b.side()));
    }
    Ok(match_tokens(a.tokens(), b.tokens()))
}

/// Same as [`match_sentences`] on bare token runs.
pub fn match_tokens(a: &[Token], b: &[Token]) -> Option<MatchSequence> {
    if a == b {
        return Some(MatchSequence::from_parts(vec![a.to_vec()], Vec::new()));
    }
    let mut search = Search {
        a,
        b,
        sims: Vec::new(),
        diffs: Vec::new(),
        used: HashMap::new(),
        found: Vec::new(),
    };
    search.similarity(0, 0, false);
    match search.found.len() {
        1 => search.found.pop(),
        _ => None,
    }
}

type Span = (usize, usize);

/// Depth-first search over decompositions, abandoned as soon as a second
/// solution turns up.
struct Search<'a> {
    a: &'a [Token],
    b: &'a [Token],
    // (start in a, start in b, len)
    sims: Vec<(usize, usize, usize)>,
    diffs: Vec<(Span, Span)>,
    // tokens appearing in the differences placed so far, with multiplicity
    used: HashMap<&'a Token, usize>,
    found: Vec<MatchSequence>,
}

impl<'a> Search<'a> {
    fn done(&self) -> bool {
        self.found.len() > 1
    }

    /// Places the similarity starting at `a[i]` / `b[j]`. An interior
    /// similarity must be non-empty unless both sentences are exhausted, in
    /// which case it is the (empty) trailing slot.
    fn similarity(&mut self, i: usize, j: usize, interior: bool) {
        let (a, b) = (self.a, self.b);
        if interior && i == a.len() && j == b.len() {
            self.sims.push((i, j, 0));
            self.record();
            self.sims.pop();
            return;
        }
        let mut longest = 0;
        while i + longest < a.len()
            && j + longest < b.len()
            && a[i + longest] == b[j + longest]
            && !self.used.contains_key(&a[i + longest])
        {
            longest += 1;
        }
        let shortest = usize::from(interior);
        for len in shortest..=longest {
            if self.done() {
                return;
            }
            let (ni, nj) = (i + len, j + len);
            self.sims.push((i, j, len));
            if ni == a.len() && nj == b.len() {
                if !self.diffs.is_empty() {
                    self.record();
                }
            } else if ni < a.len() && nj < b.len() {
                self.difference(ni, nj);
            }
            self.sims.pop();
        }
    }

    fn difference(&mut self, i: usize, j: usize) {
        let (a, b) = (self.a, self.b);
        for p in 1..=a.len() - i {
            let first = &a[i..i + p];
            // every longer first-run would clash with any second-run
            if first.contains(&b[j]) {
                break;
            }
            for q in 1..=b.len() - j {
                if self.done() {
                    return;
                }
                if first.contains(&b[j + q - 1]) {
                    break;
                }
                let second = &b[j..j + q];
                self.push_diff((i, p), (j, q), first, second);
                self.similarity(i + p, j + q, true);
                self.pop_diff(first, second);
            }
        }
    }

    fn push_diff(&mut self, x: Span, y: Span, first: &'a [Token], second: &'a [Token]) {
        for t in first.iter().chain(second) {
            *self.used.entry(t).or_insert(0) += 1;
        }
        self.diffs.push((x, y));
    }

    fn pop_diff(&mut self, first: &'a [Token], second: &'a [Token]) {
        for t in first.iter().chain(second) {
            let n = self.used.get_mut(t).expect("token was counted on push");
            *n -= 1;
            if *n == 0 {
                self.used.remove(t);
            }
        }
        self.diffs.pop();
    }

    fn record(&mut self) {
        let similarities = self
            .sims
            .iter()
            .map(|&(i, _, len)| self.a[i..i + len].to_vec())
            .collect();
        let differences = self
            .diffs
            .iter()
            .map(|&((i, p), (j, q))| {
                Difference::new(self.a[i..i + p].to_vec(), self.b[j..j + q].to_vec())
            })
            .collect();
        self.found
            .push(MatchSequence::from_parts(similarities, differences));
    }
}
