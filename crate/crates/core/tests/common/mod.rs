#![allow(dead_code)]

pub mod gen;

use std::path::PathBuf;

use gebmt_core::{Corpus, Rule, RuleBase};

pub const FIXTURES: [&str; 5] = ["it_is_a", "give_past", "example1", "example2", "example3"];

pub fn fixture_path(name: &str) -> PathBuf {
    PathBuf::from(env!("CARGO_MANIFEST_DIR"))
        .join("tests/fixtures")
        .join(format!("{name}.tsv"))
}

pub fn corpus(name: &str) -> Corpus {
    let text = std::fs::read_to_string(fixture_path(name)).expect("fixture exists");
    Corpus::parse(&text).expect("fixture parses")
}

pub fn rules(lines: &[&str]) -> Vec<Rule> {
    lines
        .iter()
        .map(|l| l.parse().expect("valid rule line"))
        .collect()
}

/// Rules of a base as a sorted list of their text lines.
pub fn rule_set(base: &RuleBase) -> Vec<String> {
    let mut out: Vec<String> = base.insertion_order().map(|(_, r)| r.to_string()).collect();
    out.sort();
    out
}

pub fn sorted(lines: &[&str]) -> Vec<String> {
    let mut out: Vec<String> = rules(lines).iter().map(Rule::to_string).collect();
    out.sort();
    out
}

/// Expected final rule sets, written as in the worked examples (lexical
/// text, any variable numbering, any case).
pub fn expected_rules(name: &str) -> Vec<String> {
    match name {
        "it_is_a" => sorted(&[
            "fact: it is a book ||| o bir kitap+COP",
            "fact: it is a pencil ||| o bir kurşun kalem+COP",
            "fact: book ||| kitap",
            "fact: pencil ||| kurşun kalem",
            "tmpl: it is a $1 ||| o bir $1 +COP",
        ]),
        "give_past" => sorted(&[
            "fact: i give+past the book ||| kitap+acc ver+past+1sg",
            "fact: you give+past the pencil ||| kurşun kalem+acc ver+past+2sg",
        ]),
        "example1" => sorted(&[
            "fact: i see+PAST you at the garden ||| sen+ACC bahçe+LOC gör+PAST+1SG",
            "fact: i see+PAST you at the party ||| sen+ACC parti+LOC gör+PAST+1SG",
            "tmpl: i see+PAST you at the $1 ||| sen+ACC $1 +LOC gör+PAST+1SG",
            "fact: garden ||| bahçe",
            "fact: party ||| parti",
        ]),
        "example2" => sorted(&[
            "fact: it is rain+PRG ||| yağmur yağı+PRG",
            "fact: He come+AOR ||| gel+AOR",
            "fact: if it is rain+PRG then you should take an umbrella ||| eğer yağmur yağı+PRG+COND bir şemsiye al+NEC+2SG",
            "fact: if he come+AOR then we will go to the theater ||| eğer gel+AOR+COND tiyatro+DAT git+FUT+1PL",
            "tmpl: if $1 then $2 ||| eğer $1 +COND $2",
            "fact: you should take an umbrella ||| bir şemsiye al+NEC+2SG",
            "fact: we will go to the theater ||| tiyatro+DAT git+FUT+1PL",
        ]),
        "example3" => sorted(&[
            "fact: i go+PAST ||| git+PAST+1SG",
            "fact: you go+PAST ||| git+PAST+2SG",
            "fact: i come+PAST ||| gel+PAST+1SG",
            "tmpl: $1 go+PAST ||| git+PAST $1",
            "fact: i ||| +1SG",
            "fact: you ||| +2SG",
            "tmpl: i $1+PAST ||| $1+PAST+1SG",
            "fact: go ||| git",
            "fact: come ||| gel",
        ]),
        other => panic!("no expectation for fixture {other}"),
    }
}
