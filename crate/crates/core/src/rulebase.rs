//! Translation rules and the ordered, deduplicated rule base.
//!
//! A [`Fact`] pairs two plain token runs. A [`Template`] pairs two patterns of
//! terminals and variables; variable `$k` on the L1 side corresponds to `$k`
//! on the L2 side. Templates are stored in canonical form (variables numbered
//! `1..=k` left to right on the L1 side) so that renaming never creates a new
//! rule.
//!
//! Rule file format, one rule per line:
//!
//! ```text
//! # comment
//! fact: book ||| kitap
//! tmpl: if $1 then $2 ||| eğer $1 +cond $2
//! ```

use std::cmp::Reverse;
use std::collections::{BTreeMap, BTreeSet, HashMap};
use std::fmt;
use std::io;
use std::str::FromStr;

use thiserror::Error;

use crate::lexrep::{parse_tokens, parse_word, render_tokens, LexError, Side, Token};

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum RuleError {
    #[error("{0} side of rule is empty")]
    EmptySide(Side),
    #[error("{0} side of template has no terminal")]
    NoTerminal(Side),
    #[error("{0} side of template has adjacent variables")]
    AdjacentVars(Side),
    #[error("variable ${1} appears twice on the {0} side")]
    RepeatedVar(Side, u32),
    #[error("variable index must be at least 1")]
    ZeroVar,
    #[error("template has no variables")]
    NoVars,
    #[error("variable pairing is not a bijection between the two sides")]
    BrokenPairing,
    #[error(transparent)]
    Lex(#[from] LexError),
}

/// Parse failure in a rule file, with its 1-based line number.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("line {line}: {reason}")]
pub struct RuleFileError {
    pub line: usize,
    pub reason: String,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct VarId(pub u32);

impl fmt::Display for VarId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "${}", self.0)
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum PatternItem {
    Terminal(Token),
    Var(VarId),
}

impl PatternItem {
    pub fn var(&self) -> Option<VarId> {
        match self {
            PatternItem::Var(v) => Some(*v),
            PatternItem::Terminal(_) => None,
        }
    }
}

pub fn terminal_count(pattern: &[PatternItem]) -> usize {
    pattern.iter().filter(|p| p.var().is_none()).count()
}

pub fn var_count(pattern: &[PatternItem]) -> usize {
    pattern.iter().filter(|p| p.var().is_some()).count()
}

/// Renders a pattern in lexical text. A morpheme is glued to a preceding
/// terminal; after a variable it starts a new word (`$1 +cond`).
pub fn render_pattern(pattern: &[PatternItem]) -> String {
    let mut out = String::new();
    let mut prev_terminal = false;
    for (i, item) in pattern.iter().enumerate() {
        match item {
            PatternItem::Terminal(t) => {
                if i > 0 && !(t.is_morpheme() && prev_terminal) {
                    out.push(' ');
                }
                out.push_str(t.text());
                prev_terminal = true;
            }
            PatternItem::Var(v) => {
                if i > 0 {
                    out.push(' ');
                }
                out.push_str(&v.to_string());
                prev_terminal = false;
            }
        }
    }
    out
}

/// Parses a pattern: lexical text where a word `$k` (optionally followed by
/// morphemes, as in `$1+past`) is a variable.
pub fn parse_pattern(text: &str) -> Result<Vec<PatternItem>, RuleError> {
    let mut items = Vec::new();
    for word in text.split_whitespace() {
        let mut tokens = Vec::new();
        if let Some(rest) = word.strip_prefix('$') {
            let digits = rest.len() - rest.trim_start_matches(|c: char| c.is_ascii_digit()).len();
            let tail = &rest[digits..];
            if digits > 0 && (tail.is_empty() || tail.starts_with('+')) {
                let index: u32 = rest[..digits]
                    .parse()
                    .map_err(|_| LexError::MalformedMorpheme(word.to_string()))?;
                if index == 0 {
                    return Err(RuleError::ZeroVar);
                }
                items.push(PatternItem::Var(VarId(index)));
                if !tail.is_empty() {
                    parse_word(tail, &mut tokens)?;
                }
                items.extend(tokens.into_iter().map(PatternItem::Terminal));
                continue;
            }
        }
        parse_word(word, &mut tokens)?;
        items.extend(tokens.into_iter().map(PatternItem::Terminal));
    }
    Ok(items)
}

/// A variable-free rule: an L1 run that translates to an L2 run.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Fact {
    lhs: Vec<Token>,
    rhs: Vec<Token>,
}

impl Fact {
    pub fn new(lhs: Vec<Token>, rhs: Vec<Token>) -> Result<Fact, RuleError> {
        if lhs.is_empty() {
            return Err(RuleError::EmptySide(Side::L1));
        }
        if rhs.is_empty() {
            return Err(RuleError::EmptySide(Side::L2));
        }
        Ok(Fact { lhs, rhs })
    }

    pub fn lhs(&self) -> &[Token] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[Token] {
        &self.rhs
    }

    pub fn side(&self, side: Side) -> &[Token] {
        match side {
            Side::L1 => &self.lhs,
            Side::L2 => &self.rhs,
        }
    }
}

/// Two patterns with paired variables. Always canonical: L1 variables are
/// `$1..$k` in order of appearance, and `$i` pairs with `$i` on the L2 side.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Template {
    lhs: Vec<PatternItem>,
    rhs: Vec<PatternItem>,
}

impl Template {
    /// Builds a template from two patterns and the pairing of L1 variables to
    /// L2 variables, then renumbers it canonically.
    pub fn new(
        lhs: Vec<PatternItem>,
        rhs: Vec<PatternItem>,
        pairing: &[(VarId, VarId)],
    ) -> Result<Template, RuleError> {
        check_side(&lhs, Side::L1)?;
        check_side(&rhs, Side::L2)?;

        let lhs_vars: BTreeSet<VarId> = lhs.iter().filter_map(PatternItem::var).collect();
        let rhs_vars: BTreeSet<VarId> = rhs.iter().filter_map(PatternItem::var).collect();
        if lhs_vars.is_empty() || rhs_vars.is_empty() {
            return Err(RuleError::NoVars);
        }
        let forward: BTreeMap<VarId, VarId> = pairing.iter().copied().collect();
        let backward: BTreeMap<VarId, VarId> = pairing.iter().map(|&(l, r)| (r, l)).collect();
        let bijective = forward.len() == pairing.len()
            && backward.len() == pairing.len()
            && forward.keys().copied().collect::<BTreeSet<_>>() == lhs_vars
            && backward.keys().copied().collect::<BTreeSet<_>>() == rhs_vars;
        if !bijective {
            return Err(RuleError::BrokenPairing);
        }

        // canonical numbering by first appearance on the L1 side
        let mut renumber: HashMap<VarId, VarId> = HashMap::new();
        let lhs = lhs
            .into_iter()
            .map(|item| match item {
                PatternItem::Var(v) => {
                    let next = VarId(renumber.len() as u32 + 1);
                    PatternItem::Var(*renumber.entry(v).or_insert(next))
                }
                t => t,
            })
            .collect();
        let rhs = rhs
            .into_iter()
            .map(|item| match item {
                PatternItem::Var(v) => PatternItem::Var(renumber[&backward[&v]]),
                t => t,
            })
            .collect();
        Ok(Template { lhs, rhs })
    }

    /// Builds a template where `$k` on one side pairs with `$k` on the other.
    pub fn with_shared_vars(
        lhs: Vec<PatternItem>,
        rhs: Vec<PatternItem>,
    ) -> Result<Template, RuleError> {
        let pairing: Vec<(VarId, VarId)> = lhs
            .iter()
            .filter_map(PatternItem::var)
            .map(|v| (v, v))
            .collect();
        Template::new(lhs, rhs, &pairing)
    }

    pub fn lhs(&self) -> &[PatternItem] {
        &self.lhs
    }

    pub fn rhs(&self) -> &[PatternItem] {
        &self.rhs
    }

    pub fn side(&self, side: Side) -> &[PatternItem] {
        match side {
            Side::L1 => &self.lhs,
            Side::L2 => &self.rhs,
        }
    }

    /// Pairs of (L1 variable, L2 variable); identity in canonical form.
    pub fn pairing(&self) -> Vec<(VarId, VarId)> {
        self.lhs
            .iter()
            .filter_map(PatternItem::var)
            .map(|v| (v, v))
            .collect()
    }

    /// Substitutes token runs for variables on one side.
    pub fn instantiate(
        &self,
        side: Side,
        bindings: &HashMap<VarId, Vec<Token>>,
    ) -> Option<Vec<Token>> {
        let mut out = Vec::new();
        for item in self.side(side) {
            match item {
                PatternItem::Terminal(t) => out.push(t.clone()),
                PatternItem::Var(v) => out.extend_from_slice(bindings.get(v)?),
            }
        }
        Some(out)
    }
}

fn check_side(pattern: &[PatternItem], side: Side) -> Result<(), RuleError> {
    if pattern.is_empty() {
        return Err(RuleError::EmptySide(side));
    }
    if terminal_count(pattern) == 0 {
        return Err(RuleError::NoTerminal(side));
    }
    if pattern
        .windows(2)
        .any(|w| w[0].var().is_some() && w[1].var().is_some())
    {
        return Err(RuleError::AdjacentVars(side));
    }
    let mut seen = BTreeSet::new();
    for v in pattern.iter().filter_map(PatternItem::var) {
        if v.0 == 0 {
            return Err(RuleError::ZeroVar);
        }
        if !seen.insert(v) {
            return Err(RuleError::RepeatedVar(side, v.0));
        }
    }
    Ok(())
}

#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub enum Rule {
    Fact(Fact),
    Template(Template),
}

impl Rule {
    pub fn fact(lhs: Vec<Token>, rhs: Vec<Token>) -> Result<Rule, RuleError> {
        Fact::new(lhs, rhs).map(Rule::Fact)
    }

    pub fn is_fact(&self) -> bool {
        matches!(self, Rule::Fact(_))
    }

    pub fn as_template(&self) -> Option<&Template> {
        match self {
            Rule::Template(t) => Some(t),
            Rule::Fact(_) => None,
        }
    }

    /// Terminal count of the given side.
    pub fn terminals(&self, side: Side) -> usize {
        match self {
            Rule::Fact(f) => f.side(side).len(),
            Rule::Template(t) => terminal_count(t.side(side)),
        }
    }

    pub fn vars(&self) -> usize {
        match self {
            Rule::Fact(_) => 0,
            Rule::Template(t) => var_count(&t.lhs),
        }
    }

    pub fn render_side(&self, side: Side) -> String {
        match self {
            Rule::Fact(f) => render_tokens(f.side(side)),
            Rule::Template(t) => render_pattern(t.side(side)),
        }
    }
}

impl fmt::Display for Rule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let tag = if self.is_fact() { "fact" } else { "tmpl" };
        write!(
            f,
            "{tag}: {} ||| {}",
            self.render_side(Side::L1),
            self.render_side(Side::L2)
        )
    }
}

impl FromStr for Rule {
    type Err = String;

    fn from_str(line: &str) -> Result<Rule, String> {
        let (tag, body) = line
            .split_once(':')
            .ok_or_else(|| "expected `fact:` or `tmpl:` prefix".to_string())?;
        let (lhs, rhs) = body
            .split_once("|||")
            .ok_or_else(|| "missing `|||` separator".to_string())?;
        if rhs.contains("|||") {
            return Err("more than one `|||` separator".into());
        }
        match tag.trim() {
            "fact" => {
                let lhs = parse_tokens(lhs).map_err(|e| e.to_string())?;
                let rhs = parse_tokens(rhs).map_err(|e| e.to_string())?;
                Rule::fact(lhs, rhs).map_err(|e| e.to_string())
            }
            "tmpl" => {
                let lhs = parse_pattern(lhs).map_err(|e| e.to_string())?;
                let rhs = parse_pattern(rhs).map_err(|e| e.to_string())?;
                Template::with_shared_vars(lhs, rhs)
                    .map(Rule::Template)
                    .map_err(|e| e.to_string())
            }
            other => Err(format!("unknown rule kind `{other}`")),
        }
    }
}

/// Position of a rule in insertion order.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct RuleId(pub usize);

impl fmt::Display for RuleId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "r{}", self.0)
    }
}

/// Sort key putting the most specific rule first: more terminals on the
/// source side, then fewer variables, then earlier insertion.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord)]
pub struct SpecificityKey {
    terminals: Reverse<usize>,
    vars: usize,
    inserted: RuleId,
}

pub fn specificity_key(rule: &Rule, source: Side, id: RuleId) -> SpecificityKey {
    SpecificityKey {
        terminals: Reverse(rule.terminals(source)),
        vars: rule.vars(),
        inserted: id,
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum AddOutcome {
    Added(RuleId),
    Duplicate(RuleId),
}

impl AddOutcome {
    pub fn is_added(self) -> bool {
        matches!(self, AddOutcome::Added(_))
    }
}

/// Deduplicated rules, kept in specificity order for both directions.
#[derive(Debug, Clone, Default)]
pub struct RuleBase {
    rules: Vec<Rule>,
    ids: HashMap<Rule, RuleId>,
    order_l1: Vec<RuleId>,
    order_l2: Vec<RuleId>,
}

impl PartialEq for RuleBase {
    fn eq(&self, other: &RuleBase) -> bool {
        self.rules == other.rules
    }
}

impl Eq for RuleBase {}

impl RuleBase {
    pub fn new() -> RuleBase {
        RuleBase::default()
    }

    pub fn len(&self) -> usize {
        self.rules.len()
    }

    pub fn is_empty(&self) -> bool {
        self.rules.is_empty()
    }

    pub fn add(&mut self, rule: Rule) -> AddOutcome {
        if let Some(&id) = self.ids.get(&rule) {
            return AddOutcome::Duplicate(id);
        }
        let id = RuleId(self.rules.len());
        for (side, order) in [
            (Side::L1, &mut self.order_l1),
            (Side::L2, &mut self.order_l2),
        ] {
            let key = specificity_key(&rule, side, id);
            let at = order
                .partition_point(|&other| specificity_key(&self.rules[other.0], side, other) < key);
            order.insert(at, id);
        }
        self.ids.insert(rule.clone(), id);
        self.rules.push(rule);
        AddOutcome::Added(id)
    }

    pub fn contains(&self, rule: &Rule) -> bool {
        self.ids.contains_key(rule)
    }

    pub fn contains_fact(&self, lhs: &[Token], rhs: &[Token]) -> bool {
        match Fact::new(lhs.to_vec(), rhs.to_vec()) {
            Ok(fact) => self.ids.contains_key(&Rule::Fact(fact)),
            Err(_) => false,
        }
    }

    pub fn get(&self, id: RuleId) -> Option<&Rule> {
        self.rules.get(id.0)
    }

    /// Rules most-specific-first with respect to the L1 side.
    pub fn iter(&self) -> impl Iterator<Item = (RuleId, &Rule)> {
        self.ordered(Side::L1)
    }

    /// Rules most-specific-first with respect to `source`.
    pub fn ordered(&self, source: Side) -> impl Iterator<Item = (RuleId, &Rule)> {
        let order = match source {
            Side::L1 => &self.order_l1,
            Side::L2 => &self.order_l2,
        };
        order.iter().map(move |&id| (id, &self.rules[id.0]))
    }

    pub fn insertion_order(&self) -> impl Iterator<Item = (RuleId, &Rule)> {
        self.rules.iter().enumerate().map(|(i, r)| (RuleId(i), r))
    }

    /// Writes one rule per line in insertion order.
    pub fn save<W: io::Write>(&self, mut out: W) -> io::Result<()> {
        for rule in &self.rules {
            writeln!(out, "{rule}")?;
        }
        Ok(())
    }

    pub fn to_text(&self) -> String {
        let mut buf = Vec::new();
        self.save(&mut buf).expect("writing to a Vec cannot fail");
        String::from_utf8(buf).expect("rules render as UTF-8")
    }

    pub fn load<R: io::BufRead>(input: R) -> Result<RuleBase, RuleFileError> {
        let mut base = RuleBase::new();
        for (i, line) in input.lines().enumerate() {
            let line = line.map_err(|e| RuleFileError {
                line: i + 1,
                reason: e.to_string(),
            })?;
            let trimmed = line.trim();
            if trimmed.is_empty() || trimmed.starts_with('#') {
                continue;
            }
            let rule = trimmed.parse::<Rule>().map_err(|reason| RuleFileError {
                line: i + 1,
                reason,
            })?;
            base.add(rule);
        }
        Ok(base)
    }

    pub fn from_text(text: &str) -> Result<RuleBase, RuleFileError> {
        RuleBase::load(text.as_bytes())
    }
}

impl Extend<Rule> for RuleBase {
    fn extend<I: IntoIterator<Item = Rule>>(&mut self, iter: I) {
        for rule in iter {
            self.add(rule);
        }
    }
}

impl FromIterator<Rule> for RuleBase {
    fn from_iter<I: IntoIterator<Item = Rule>>(iter: I) -> RuleBase {
        let mut base = RuleBase::new();
        base.extend(iter);
        base
    }
}
