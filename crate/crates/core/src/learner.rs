//! Rule induction from pairs of translation examples.
//!
//! Given two examples, the L1 sentences and the L2 sentences are matched
//! separately. Differences already explained by known facts are abstracted
//! into paired variables until one difference per side remains; that last
//! pair is taken to be a mutual translation, which yields two new facts and a
//! template built from the shared context.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use crate::lexrep::{ExamplePair, LexError};
use crate::matcher::{match_tokens, Difference, MatchSequence};
use crate::rulebase::{PatternItem, Rule, RuleBase, Template, VarId};

pub const DEFAULT_MAX_PASSES: usize = 10;

/// Why a pair of examples produced no rules.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum SkipReason {
    /// One side has no unique match sequence.
    NoMatch,
    /// One side's match sequence has no non-empty similarity.
    NoSimilarity,
    /// The L1 sentences are identical.
    NoDifferences,
    /// The two sides have different numbers of differences.
    CountMismatch,
    /// Fewer than n-1 differences could be explained by known facts.
    Unresolvable,
}

impl SkipReason {
    pub fn code(self) -> &'static str {
        match self {
            SkipReason::NoMatch => "no-match",
            SkipReason::NoSimilarity => "no-similarity",
            SkipReason::NoDifferences => "no-differences",
            SkipReason::CountMismatch => "count-mismatch",
            SkipReason::Unresolvable => "unresolvable",
        }
    }
}

impl fmt::Display for SkipReason {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.code())
    }
}

/// True if both components of an L1 difference are known to translate to the
/// corresponding components of an L2 difference. Components are aligned by
/// example: `.first` comes from the first example on both sides.
pub fn resolve_known(l1: &Difference, l2: &Difference, base: &RuleBase) -> bool {
    base.contains_fact(l1.first(), l2.first()) && base.contains_fact(l1.second(), l2.second())
}

/// Learns from one pair of examples against a snapshot of known rules.
///
/// Returns the rules not already in `base` (possibly none, when everything
/// learnable was already known), or the reason nothing could be learned.
pub fn learn_pair(
    e1: &ExamplePair,
    e2: &ExamplePair,
    base: &RuleBase,
) -> Result<Vec<Rule>, SkipReason> {
    let m1 = match_tokens(e1.l1().tokens(), e2.l1().tokens()).ok_or(SkipReason::NoMatch)?;
    let m2 = match_tokens(e1.l2().tokens(), e2.l2().tokens()).ok_or(SkipReason::NoMatch)?;
    if m1.similarity_count() == 0 || m2.similarity_count() == 0 {
        return Err(SkipReason::NoSimilarity);
    }
    let n = m1.difference_count();
    if n == 0 {
        return Err(SkipReason::NoDifferences);
    }
    if n != m2.difference_count() {
        return Err(SkipReason::CountMismatch);
    }

    let mut vars1: Vec<Option<VarId>> = vec![None; n];
    let mut vars2: Vec<Option<VarId>> = vec![None; n];
    let mut next_var = 1;
    for _ in 1..n {
        let (i, j) =
            find_resolvable(&m1, &m2, &vars1, &vars2, base).ok_or(SkipReason::Unresolvable)?;
        vars1[i] = Some(VarId(next_var));
        vars2[j] = Some(VarId(next_var));
        next_var += 1;
    }

    let last1 = vars1
        .iter()
        .position(Option::is_none)
        .expect("one L1 difference left");
    let last2 = vars2
        .iter()
        .position(Option::is_none)
        .expect("one L2 difference left");
    vars1[last1] = Some(VarId(next_var));
    vars2[last2] = Some(VarId(next_var));
    let (d1, d2) = (&m1.differences()[last1], &m2.differences()[last2]);

    let template = Template::with_shared_vars(
        abstract_sequence(&m1, &vars1),
        abstract_sequence(&m2, &vars2),
    )
    .expect("a match with a non-empty similarity yields a well-formed template");

    let candidates = [
        Rule::fact(d1.first().to_vec(), d2.first().to_vec()),
        Rule::fact(d1.second().to_vec(), d2.second().to_vec()),
        Ok(Rule::Template(template)),
    ];
    let mut out: Vec<Rule> = Vec::new();
    for rule in candidates {
        let rule = rule.expect("difference runs are non-empty");
        if !base.contains(&rule) && !out.contains(&rule) {
            out.push(rule);
        }
    }
    Ok(out)
}

/// Leftmost unresolved L1 difference, then leftmost unresolved L2 difference,
/// whose correspondence is already known.
fn find_resolvable(
    m1: &MatchSequence,
    m2: &MatchSequence,
    vars1: &[Option<VarId>],
    vars2: &[Option<VarId>],
    base: &RuleBase,
) -> Option<(usize, usize)> {
    for (i, d1) in m1.differences().iter().enumerate() {
        if vars1[i].is_some() {
            continue;
        }
        for (j, d2) in m2.differences().iter().enumerate() {
            if vars2[j].is_none() && resolve_known(d1, d2, base) {
                return Some((i, j));
            }
        }
    }
    None
}

/// The match sequence with every difference replaced by its variable.
fn abstract_sequence(m: &MatchSequence, vars: &[Option<VarId>]) -> Vec<PatternItem> {
    let mut out = Vec::new();
    for (k, sim) in m.similarities().iter().enumerate() {
        out.extend(sim.iter().cloned().map(PatternItem::Terminal));
        if let Some(var) = vars.get(k) {
            out.push(PatternItem::Var(
                var.expect("every difference has a variable"),
            ));
        }
    }
    out
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum CorpusError {
    #[error("corpus is empty")]
    Empty,
    #[error("line {line}: {reason}")]
    Line { line: usize, reason: String },
}

/// Ordered, non-empty list of translation examples.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Corpus {
    examples: Vec<ExamplePair>,
}

impl Corpus {
    pub fn new(examples: Vec<ExamplePair>) -> Result<Corpus, CorpusError> {
        if examples.is_empty() {
            return Err(CorpusError::Empty);
        }
        Ok(Corpus { examples })
    }

    /// Parses `L1 text<TAB>L2 text` lines; `#` comments and blank lines are
    /// skipped.
    pub fn parse(text: &str) -> Result<Corpus, CorpusError> {
        let mut examples = Vec::new();
        for (i, line) in text.lines().enumerate() {
            let line_err = |reason: String| CorpusError::Line {
                line: i + 1,
                reason,
            };
            if line.trim().is_empty() || line.trim_start().starts_with('#') {
                continue;
            }
            let mut cols = line.split('\t');
            let (Some(l1), Some(l2), None) = (cols.next(), cols.next(), cols.next()) else {
                return Err(line_err(
                    "expected exactly one TAB between L1 and L2 text".into(),
                ));
            };
            let pair = ExamplePair::parse(l1, l2).map_err(|e: LexError| line_err(e.to_string()))?;
            examples.push(pair);
        }
        Corpus::new(examples)
    }

    pub fn examples(&self) -> &[ExamplePair] {
        &self.examples
    }

    pub fn len(&self) -> usize {
        self.examples.len()
    }

    pub fn is_empty(&self) -> bool {
        self.examples.is_empty()
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct PassReport {
    pub added: usize,
    pub skipped: BTreeMap<SkipReason, usize>,
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LearnReport {
    pub examples: usize,
    /// Facts contributed directly by corpus examples (after deduplication).
    pub example_facts: usize,
    pub passes: Vec<PassReport>,
    /// True when the last pass added nothing.
    pub converged: bool,
}

impl LearnReport {
    pub fn learned(&self) -> usize {
        self.passes.iter().map(|p| p.added).sum()
    }

    /// Pairs left unresolvable in the final pass.
    pub fn unresolved_pairs(&self) -> usize {
        self.passes
            .last()
            .and_then(|p| p.skipped.get(&SkipReason::Unresolvable))
            .copied()
            .unwrap_or(0)
    }
}

impl fmt::Display for LearnReport {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for (i, pass) in self.passes.iter().enumerate() {
            write!(f, "pass {}: learned {}", i + 1, pass.added)?;
            let skipped: usize = pass.skipped.values().sum();
            write!(f, ", skipped {skipped}")?;
            for (reason, count) in &pass.skipped {
                write!(f, " {reason}={count}")?;
            }
            writeln!(f)?;
        }
        writeln!(
            f,
            "rules: {} ({} from examples, {} learned)",
            self.example_facts + self.learned(),
            self.example_facts,
            self.learned()
        )?;
        writeln!(f, "unresolved pairs: {}", self.unresolved_pairs())?;
        if self.converged {
            writeln!(f, "converged after {} passes", self.passes.len())
        } else {
            writeln!(
                f,
                "stopped after {} passes without converging",
                self.passes.len()
            )
        }
    }
}

/// Learns a rule base from a corpus.
///
/// Each example first contributes its own fact. Then every unordered pair
/// `(i, j)`, `i < j`, is learned from in corpus order, with new rules visible
/// to later pairs immediately. Passes repeat until one adds nothing or
/// `max_passes` have run.
pub fn learn_corpus(corpus: &Corpus, max_passes: usize) -> (RuleBase, LearnReport) {
    let mut base = RuleBase::new();
    for example in corpus.examples() {
        let fact = Rule::fact(
            example.l1().tokens().to_vec(),
            example.l2().tokens().to_vec(),
        )
        .expect("sentences are non-empty");
        base.add(fact);
    }
    let mut report = LearnReport {
        examples: corpus.len(),
        example_facts: base.len(),
        ..LearnReport::default()
    };

    let examples = corpus.examples();
    for _ in 0..max_passes {
        let mut pass = PassReport::default();
        for (i, e1) in examples.iter().enumerate() {
            for e2 in &examples[i + 1..] {
                match learn_pair(e1, e2, &base) {
                    Ok(rules) => {
                        pass.added += rules
                            .into_iter()
                            .filter(|r| base.add(r.clone()).is_added())
                            .count();
                    }
                    Err(reason) => *pass.skipped.entry(reason).or_insert(0) += 1,
                }
            }
        }
        let added = pass.added;
        report.passes.push(pass);
        if added == 0 {
            report.converged = true;
            break;
        }
    }
    (base, report)
}
