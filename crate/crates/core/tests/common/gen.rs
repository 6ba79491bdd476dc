//! Seeded random generators for rules, rule bases and sentences.

use rand::seq::SliceRandom;
use rand::Rng;

use gebmt_core::{PatternItem, Rule, RuleBase, Template, Token, VarId};

pub fn token(rng: &mut impl Rng, stems: &[&str], morphemes: &[&str]) -> Token {
    if !morphemes.is_empty() && rng.gen_bool(0.3) {
        Token::morpheme(morphemes.choose(rng).unwrap()).unwrap()
    } else {
        Token::stem(stems.choose(rng).unwrap()).unwrap()
    }
}

pub fn run(rng: &mut impl Rng, len: usize, stems: &[&str], morphemes: &[&str]) -> Vec<Token> {
    (0..len).map(|_| token(rng, stems, morphemes)).collect()
}

const STEMS: [&str; 6] = ["a", "b", "c", "ş", "ğe", "x"];
const MORPHEMES: [&str; 3] = ["past", "1sg", "acc"];

fn pattern(rng: &mut impl Rng, vars: u32) -> Vec<PatternItem> {
    let mut ids: Vec<u32> = (1..=vars).collect();
    ids.shuffle(rng);
    let mut items = Vec::new();
    for id in ids {
        for _ in 0..rng.gen_range(0..=2) {
            items.push(PatternItem::Terminal(token(rng, &STEMS, &MORPHEMES)));
        }
        items.push(PatternItem::Var(VarId(id)));
    }
    for _ in 0..rng.gen_range(0..=2) {
        items.push(PatternItem::Terminal(token(rng, &STEMS, &MORPHEMES)));
    }
    items
}

/// A template satisfying the learned-template invariants (rejection sampled).
pub fn template(rng: &mut impl Rng) -> Template {
    loop {
        let vars = rng.gen_range(1..=3);
        let (lhs, rhs) = (pattern(rng, vars), pattern(rng, vars));
        if let Ok(t) = Template::with_shared_vars(lhs, rhs) {
            return t;
        }
    }
}

pub fn fact(rng: &mut impl Rng) -> Rule {
    let l = rng.gen_range(1..=3);
    let r = rng.gen_range(1..=3);
    Rule::fact(
        run(rng, l, &STEMS, &MORPHEMES),
        run(rng, r, &STEMS, &MORPHEMES),
    )
    .unwrap()
}

pub fn rule_base(rng: &mut impl Rng, size: usize) -> RuleBase {
    let mut base = RuleBase::new();
    while base.len() < size {
        let rule = if rng.gen_bool(0.5) {
            fact(rng)
        } else {
            Rule::Template(template(rng))
        };
        base.add(rule);
    }
    base
}

/// A random L1-side token run over the same vocabulary as the rules.
pub fn input(rng: &mut impl Rng) -> Vec<Token> {
    let len = rng.gen_range(1..=8);
    run(rng, len, &STEMS, &MORPHEMES)
}
