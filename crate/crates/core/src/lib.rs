//! Learns bilingual translation rules from pairs of aligned examples and
//! applies them, most specific first, in either direction.
//!
//! Sentences are written at the lexical level: stems plus explicit morpheme
//! markers (`i see+PAST you`). Two examples are compared side by side; the
//! parts they share become the fixed context of a template and the parts that
//! differ become variables, with the differing runs learned as facts.

pub mod learner;
pub mod lexrep;
pub mod matcher;
pub mod oracle;
pub mod rulebase;
pub mod translator;

pub use learner::{
    learn_corpus, learn_pair, resolve_known, Corpus, CorpusError, LearnReport, PassReport,
    SkipReason, DEFAULT_MAX_PASSES,
};
pub use lexrep::{
    parse_lexical, render_lexical, render_tokens, ExamplePair, LexError, Sentence, Side, Token,
    TokenKind,
};
pub use matcher::{match_sentences, match_tokens, Difference, MatchError, MatchSequence};
pub use oracle::{is_valid_decomposition, match_oracle, oracle_tokens, ORACLE_TOKEN_LIMIT};
pub use rulebase::{
    parse_pattern, render_pattern, specificity_key, AddOutcome, Fact, PatternItem, Rule, RuleBase,
    RuleError, RuleFileError, RuleId, SpecificityKey, Template, VarId,
};
pub use translator::{
    pattern_match, translate, Application, Binding, BoundVar, Direction, Mode, TranslateError,
    TranslationResult,
};
