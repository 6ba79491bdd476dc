//! Most-specific-first translation with learned rules.
//!
//! Rules are scanned in specificity order for the source side. A fact applies
//! when its source side is the whole input. A template applies when its
//! source pattern matches the input; each run bound to a variable is then
//! translated recursively and substituted into the target pattern. Every
//! template has a terminal on each side, so bound runs are strictly shorter
//! than the input and recursion always ends.

use std::collections::{BTreeMap, HashMap};
use std::fmt;

use thiserror::Error;

use crate::lexrep::{render_tokens, Sentence, Side, Token};
use crate::rulebase::{PatternItem, Rule, RuleBase, RuleId, VarId};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum TranslateError {
    #[error("untranslatable: no rule applies to `{}`", render_tokens(.0))]
    Untranslatable(Vec<Token>),
    #[error("input is {got} text but the direction translates from {expected}")]
    WrongSide { expected: Side, got: Side },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Direction {
    L1ToL2,
    L2ToL1,
}

impl Direction {
    pub fn source(self) -> Side {
        match self {
            Direction::L1ToL2 => Side::L1,
            Direction::L2ToL1 => Side::L2,
        }
    }

    pub fn target(self) -> Side {
        self.source().other()
    }

    pub fn reversed(self) -> Direction {
        match self {
            Direction::L1ToL2 => Direction::L2ToL1,
            Direction::L2ToL1 => Direction::L1ToL2,
        }
    }
}

impl fmt::Display for Direction {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Direction::L1ToL2 => "l1l2",
            Direction::L2ToL1 => "l2l1",
        })
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Mode {
    /// Only the result of the first applicable rule.
    #[default]
    First,
    /// One result per applicable rule and binding, in rule order.
    All,
}

/// Assignment of non-empty token runs to the variables of one pattern.
pub type Binding = BTreeMap<VarId, Vec<Token>>;

/// Every way to bind the pattern's variables to non-empty contiguous runs so
/// that the pattern reproduces `input`. The leftmost variable takes its
/// shortest run first.
pub fn pattern_match(pattern: &[PatternItem], input: &[Token]) -> Vec<Binding> {
    let mut out = Vec::new();
    let mut binding = Binding::new();
    bind(pattern, input, &mut binding, &mut out);
    out
}

fn bind(pattern: &[PatternItem], input: &[Token], binding: &mut Binding, out: &mut Vec<Binding>) {
    let Some((head, rest)) = pattern.split_first() else {
        if input.is_empty() {
            out.push(binding.clone());
        }
        return;
    };
    // every remaining item consumes at least one token
    if input.len() < pattern.len() {
        return;
    }
    match head {
        PatternItem::Terminal(t) => {
            if input[0] == *t {
                bind(rest, &input[1..], binding, out);
            }
        }
        PatternItem::Var(v) => {
            for len in 1..=input.len() - rest.len() {
                binding.insert(*v, input[..len].to_vec());
                bind(rest, &input[len..], binding, out);
            }
            binding.remove(v);
        }
    }
}

/// One rule application; templates carry the derivations of their bound runs.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Application {
    pub rule: RuleId,
    pub bindings: Vec<BoundVar>,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct BoundVar {
    pub var: VarId,
    pub source: Vec<Token>,
    pub derivation: Application,
}

impl Application {
    /// Pre-order list of (depth, application).
    pub fn steps(&self) -> Vec<(usize, &Application)> {
        let mut out = Vec::new();
        self.collect_steps(0, &mut out);
        out
    }

    fn collect_steps<'a>(&'a self, depth: usize, out: &mut Vec<(usize, &'a Application)>) {
        out.push((depth, self));
        for b in &self.bindings {
            b.derivation.collect_steps(depth + 1, out);
        }
    }

    /// Recomputes the output of this derivation from the rules alone.
    pub fn replay(&self, base: &RuleBase, direction: Direction) -> Option<Vec<Token>> {
        match base.get(self.rule)? {
            Rule::Fact(f) => Some(f.side(direction.target()).to_vec()),
            Rule::Template(t) => {
                let mut targets = HashMap::new();
                for b in &self.bindings {
                    targets.insert(b.var, b.derivation.replay(base, direction)?);
                }
                t.instantiate(direction.target(), &targets)
            }
        }
    }

    /// Indented `rule-id, binding` lines, one per application.
    pub fn render(&self) -> String {
        let mut out = String::new();
        for (depth, app) in self.steps() {
            let binding: Vec<String> = app
                .bindings
                .iter()
                .map(|b| format!("{} = \"{}\"", b.var, render_tokens(&b.source)))
                .collect();
            out.push_str(&"  ".repeat(depth));
            out.push_str(&format!("{}, {{{}}}\n", app.rule, binding.join(", ")));
        }
        out
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct TranslationResult {
    pub output: Sentence,
    pub trace: Application,
}

/// Translates `input` with the rules in `base`.
pub fn translate(
    input: &Sentence,
    direction: Direction,
    base: &RuleBase,
    mode: Mode,
) -> Result<Vec<TranslationResult>, TranslateError> {
    if input.side() != direction.source() {
        return Err(TranslateError::WrongSide {
            expected: direction.source(),
            got: input.side(),
        });
    }
    let mut t = Translator {
        base,
        direction,
        memo: HashMap::new(),
        failure: None,
    };
    let results = t.derive(input.tokens(), mode);
    if results.is_empty() {
        let run = t.failure.unwrap_or_else(|| input.tokens().to_vec());
        return Err(TranslateError::Untranslatable(run));
    }
    Ok(results
        .into_iter()
        .map(|(tokens, trace)| TranslationResult {
            output: Sentence::new(direction.target(), tokens).expect("rule sides are non-empty"),
            trace,
        })
        .collect())
}

struct Translator<'a> {
    base: &'a RuleBase,
    direction: Direction,
    // first-mode results for sub-runs
    memo: HashMap<Vec<Token>, Option<(Vec<Token>, Application)>>,
    // first run found for which no rule applied
    failure: Option<Vec<Token>>,
}

impl Translator<'_> {
    fn first(&mut self, run: &[Token]) -> Option<(Vec<Token>, Application)> {
        if let Some(hit) = self.memo.get(run) {
            return hit.clone();
        }
        let result = self.derive(run, Mode::First).into_iter().next();
        self.memo.insert(run.to_vec(), result.clone());
        result
    }

    fn derive(&mut self, input: &[Token], mode: Mode) -> Vec<(Vec<Token>, Application)> {
        let (source, target) = (self.direction.source(), self.direction.target());
        let base = self.base;
        let mut out = Vec::new();
        for (id, rule) in base.ordered(source) {
            match rule {
                Rule::Fact(f) => {
                    if f.side(source) == input {
                        out.push((
                            f.side(target).to_vec(),
                            Application {
                                rule: id,
                                bindings: Vec::new(),
                            },
                        ));
                    }
                }
                Rule::Template(t) => {
                    let pattern = t.side(source);
                    'bindings: for binding in pattern_match(pattern, input) {
                        let mut targets = HashMap::new();
                        let mut bound = Vec::new();
                        for var in pattern.iter().filter_map(PatternItem::var) {
                            let run = &binding[&var];
                            let Some((translated, derivation)) = self.first(run) else {
                                continue 'bindings;
                            };
                            targets.insert(var, translated);
                            bound.push(BoundVar {
                                var,
                                source: run.clone(),
                                derivation,
                            });
                        }
                        let output = t
                            .instantiate(target, &targets)
                            .expect("target variables are paired with source variables");
                        out.push((
                            output,
                            Application {
                                rule: id,
                                bindings: bound,
                            },
                        ));
                        if mode == Mode::First {
                            break 'bindings;
                        }
                    }
                }
            }
            if mode == Mode::First && !out.is_empty() {
                break;
            }
        }
        if out.is_empty() && self.failure.is_none() {
            self.failure = Some(input.to_vec());
        }
        out
    }
}
