//! Lexical-level text: word stems plus explicit `+MORPHEME` markers.
//!
//! `"Kitap+ACC ver+PAST+1SG"` parses to the tokens
//! `kitap +acc ver +past +1sg`. Morphemes are tokens of their own so that
//! shared runs can cross word boundaries at `+` joints.

use std::fmt;

use thiserror::Error;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum LexError {
    #[error("empty sentence")]
    EmptySentence,
    #[error("malformed morpheme in word `{0}`")]
    MalformedMorpheme(String),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TokenKind {
    Stem,
    Morpheme,
}

/// A stem (`book`) or a morpheme marker (`+past`). Text is stored lowercased;
/// morpheme text keeps its leading `+`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub struct Token {
    kind: TokenKind,
    text: String,
}

impl Token {
    /// Builds a stem token, folding case. Returns `None` if the text is empty
    /// or contains whitespace or `+`.
    pub fn stem(text: &str) -> Option<Token> {
        if text.is_empty() || text.contains('+') || text.chars().any(char::is_whitespace) {
            return None;
        }
        Some(Token {
            kind: TokenKind::Stem,
            text: text.to_lowercase(),
        })
    }

    /// Builds a morpheme token from its name, with or without the leading `+`.
    pub fn morpheme(name: &str) -> Option<Token> {
        let name = name.strip_prefix('+').unwrap_or(name);
        if name.is_empty() || name.contains('+') || name.chars().any(char::is_whitespace) {
            return None;
        }
        Some(Token {
            kind: TokenKind::Morpheme,
            text: format!("+{}", name.to_lowercase()),
        })
    }

    pub fn kind(&self) -> TokenKind {
        self.kind
    }

    pub fn text(&self) -> &str {
        &self.text
    }

    pub fn is_morpheme(&self) -> bool {
        self.kind == TokenKind::Morpheme
    }
}

impl fmt::Display for Token {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.text)
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum Side {
    L1,
    L2,
}

impl Side {
    pub fn other(self) -> Side {
        match self {
            Side::L1 => Side::L2,
            Side::L2 => Side::L1,
        }
    }
}

impl fmt::Display for Side {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Side::L1 => "l1",
            Side::L2 => "l2",
        })
    }
}

/// A non-empty token sequence in one language.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct Sentence {
    side: Side,
    tokens: Vec<Token>,
}

impl Sentence {
    pub fn new(side: Side, tokens: Vec<Token>) -> Result<Sentence, LexError> {
        if tokens.is_empty() {
            return Err(LexError::EmptySentence);
        }
        Ok(Sentence { side, tokens })
    }

    pub fn parse(text: &str, side: Side) -> Result<Sentence, LexError> {
        parse_lexical(text, side)
    }

    pub fn side(&self) -> Side {
        self.side
    }

    pub fn tokens(&self) -> &[Token] {
        &self.tokens
    }

    pub fn len(&self) -> usize {
        self.tokens.len()
    }

    pub fn is_empty(&self) -> bool {
        false
    }

    pub fn into_tokens(self) -> Vec<Token> {
        self.tokens
    }
}

impl fmt::Display for Sentence {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&render_tokens(&self.tokens))
    }
}

/// One aligned translation example.
#[derive(Debug, Clone, PartialEq, Eq, Hash)]
pub struct ExamplePair {
    l1: Sentence,
    l2: Sentence,
}

impl ExamplePair {
    /// Panics if the sentences are not tagged L1 and L2 respectively.
    pub fn new(l1: Sentence, l2: Sentence) -> ExamplePair {
        assert_eq!(
            l1.side(),
            Side::L1,
            "first sentence of an example must be L1"
        );
        assert_eq!(
            l2.side(),
            Side::L2,
            "second sentence of an example must be L2"
        );
        ExamplePair { l1, l2 }
    }

    pub fn parse(l1: &str, l2: &str) -> Result<ExamplePair, LexError> {
        Ok(ExamplePair {
            l1: parse_lexical(l1, Side::L1)?,
            l2: parse_lexical(l2, Side::L2)?,
        })
    }

    pub fn l1(&self) -> &Sentence {
        &self.l1
    }

    pub fn l2(&self) -> &Sentence {
        &self.l2
    }

    pub fn side(&self, side: Side) -> &Sentence {
        match side {
            Side::L1 => &self.l1,
            Side::L2 => &self.l2,
        }
    }
}

/// Splits one whitespace-free word into its stem and morpheme tokens.
pub(crate) fn parse_word(word: &str, out: &mut Vec<Token>) -> Result<(), LexError> {
    let malformed = || LexError::MalformedMorpheme(word.to_string());
    let mut pieces = word.split('+');
    // `split` always yields at least one piece; the first is the stem or "".
    let head = pieces.next().unwrap_or("");
    if !head.is_empty() {
        out.push(Token::stem(head).ok_or_else(malformed)?);
    }
    for piece in pieces {
        out.push(Token::morpheme(piece).ok_or_else(malformed)?);
    }
    Ok(())
}

pub fn parse_lexical(text: &str, side: Side) -> Result<Sentence, LexError> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        parse_word(word, &mut tokens)?;
    }
    Sentence::new(side, tokens)
}

pub fn render_lexical(sentence: &Sentence) -> String {
    render_tokens(sentence.tokens())
}

/// Renders any token run, including an empty one (as `""`).
pub fn render_tokens(tokens: &[Token]) -> String {
    let mut out = String::new();
    for (i, token) in tokens.iter().enumerate() {
        if i > 0 && !token.is_morpheme() {
            out.push(' ');
        }
        out.push_str(token.text());
    }
    out
}

/// Parses a run of lexical text that may be empty.
pub(crate) fn parse_tokens(text: &str) -> Result<Vec<Token>, LexError> {
    let mut tokens = Vec::new();
    for word in text.split_whitespace() {
        parse_word(word, &mut tokens)?;
    }
    Ok(tokens)
}
