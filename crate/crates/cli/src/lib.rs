//! `gebmt` command-line front end.
//!
//! Exit codes: 0 on success, 1 for usage, I/O and parse errors, 2 when a
//! sentence cannot be translated.

use std::ffi::OsString;
use std::fs;
use std::io::{self, BufRead, Write};
use std::path::{Path, PathBuf};

use clap::{Parser, Subcommand, ValueEnum};
use thiserror::Error;

use gebmt_core::{
    learn_corpus, match_sentences, parse_lexical, translate, Corpus, CorpusError, Direction,
    LexError, MatchError, Mode, RuleBase, RuleFileError, Side, TranslateError, DEFAULT_MAX_PASSES,
};

mod repl;

pub const EXIT_OK: i32 = 0;
pub const EXIT_ERROR: i32 = 1;
pub const EXIT_UNTRANSLATABLE: i32 = 2;

#[derive(Debug, Parser)]
#[command(
    name = "gebmt",
    version,
    about = "Learn translation rules from bilingual examples and apply them"
)]
pub struct Cli {
    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand)]
pub enum Command {
    /// Learn a rule file from a TAB-separated bilingual corpus
    Learn {
        #[arg(long)]
        corpus: PathBuf,
        #[arg(long)]
        out: PathBuf,
        #[arg(long, default_value_t = DEFAULT_MAX_PASSES as u64,
              value_parser = clap::value_parser!(u64).range(1..))]
        max_passes: u64,
    },
    /// Translate one lexical-level sentence
    Translate {
        #[arg(long)]
        rules: PathBuf,
        #[arg(long, value_enum)]
        dir: DirArg,
        /// Print every reading instead of the most specific one
        #[arg(long)]
        all: bool,
        /// Print the tree of rule applications
        #[arg(long)]
        trace: bool,
        sentence: String,
    },
    /// Show the match sequence of two sentences of the same language
    Match {
        #[arg(long, value_enum)]
        side: SideArg,
        a: String,
        b: String,
    },
    /// List the rules of a rule file, most specific first
    Inspect {
        #[arg(long)]
        rules: PathBuf,
        #[arg(long, value_enum, default_value = "l1l2")]
        dir: DirArg,
    },
    /// Translate sentences read from standard input
    Repl {
        #[arg(long)]
        rules: PathBuf,
    },
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum DirArg {
    L1l2,
    L2l1,
}

impl From<DirArg> for Direction {
    fn from(d: DirArg) -> Direction {
        match d {
            DirArg::L1l2 => Direction::L1ToL2,
            DirArg::L2l1 => Direction::L2ToL1,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum)]
pub enum SideArg {
    L1,
    L2,
}

impl From<SideArg> for Side {
    fn from(s: SideArg) -> Side {
        match s {
            SideArg::L1 => Side::L1,
            SideArg::L2 => Side::L2,
        }
    }
}

#[derive(Debug, Error)]
pub enum CliError {
    #[error("{}: {source}", path.display())]
    Io { path: PathBuf, source: io::Error },
    #[error("{}: {source}", path.display())]
    Corpus { path: PathBuf, source: CorpusError },
    #[error("{}: {source}", path.display())]
    Rules {
        path: PathBuf,
        source: RuleFileError,
    },
    #[error(transparent)]
    Lex(#[from] LexError),
    #[error(transparent)]
    Match(#[from] MatchError),
    #[error(transparent)]
    Translate(#[from] TranslateError),
    #[error(transparent)]
    Output(#[from] io::Error),
}

impl CliError {
    pub fn exit_code(&self) -> i32 {
        match self {
            CliError::Translate(TranslateError::Untranslatable(_)) => EXIT_UNTRANSLATABLE,
            _ => EXIT_ERROR,
        }
    }
}

/// Parses `args` (including the program name) and runs the command.
pub fn run<I, T>(args: I, stdin: &mut dyn BufRead, out: &mut dyn Write, err: &mut dyn Write) -> i32
where
    I: IntoIterator<Item = T>,
    T: Into<OsString> + Clone,
{
    let cli = match Cli::try_parse_from(args) {
        Ok(cli) => cli,
        Err(e) => {
            let code = if e.use_stderr() { EXIT_ERROR } else { EXIT_OK };
            let text = e.render().to_string();
            let _ = if e.use_stderr() {
                err.write_all(text.as_bytes())
            } else {
                out.write_all(text.as_bytes())
            };
            return code;
        }
    };
    match execute(cli.command, stdin, out, err) {
        Ok(()) => EXIT_OK,
        // reader went away, e.g. `gebmt inspect ... | head`
        Err(CliError::Output(e)) if e.kind() == io::ErrorKind::BrokenPipe => EXIT_OK,
        Err(e) => {
            let _ = writeln!(err, "error: {e}");
            e.exit_code()
        }
    }
}

pub fn execute(
    command: Command,
    stdin: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    match command {
        Command::Learn {
            corpus,
            out: rules_out,
            max_passes,
        } => cmd_learn(&corpus, &rules_out, max_passes as usize, out),
        Command::Translate {
            rules,
            dir,
            all,
            trace,
            sentence,
        } => {
            let base = load_rules(&rules)?;
            let mode = if all { Mode::All } else { Mode::First };
            cmd_translate(&base, dir.into(), mode, trace, &sentence, out)
        }
        Command::Match { side, a, b } => cmd_match(&a, &b, side.into(), out),
        Command::Inspect { rules, dir } => cmd_inspect(&load_rules(&rules)?, dir.into(), out),
        Command::Repl { rules } => {
            let base = load_rules(&rules)?;
            repl::run(&base, stdin, out, err)
        }
    }
}

pub fn load_rules(path: &Path) -> Result<RuleBase, CliError> {
    let text = fs::read_to_string(path).map_err(|source| CliError::Io {
        path: path.to_owned(),
        source,
    })?;
    RuleBase::from_text(&text).map_err(|source| CliError::Rules {
        path: path.to_owned(),
        source,
    })
}

pub fn cmd_learn(
    corpus_path: &Path,
    rules_out: &Path,
    max_passes: usize,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let text = fs::read_to_string(corpus_path).map_err(|source| CliError::Io {
        path: corpus_path.to_owned(),
        source,
    })?;
    let corpus = Corpus::parse(&text).map_err(|source| CliError::Corpus {
        path: corpus_path.to_owned(),
        source,
    })?;
    let (base, report) = learn_corpus(&corpus, max_passes);
    fs::write(rules_out, base.to_text()).map_err(|source| CliError::Io {
        path: rules_out.to_owned(),
        source,
    })?;
    write!(out, "{report}")?;
    Ok(())
}

pub fn cmd_translate(
    base: &RuleBase,
    direction: Direction,
    mode: Mode,
    trace: bool,
    sentence: &str,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let input = parse_lexical(sentence, direction.source())?;
    for result in translate(&input, direction, base, mode)? {
        writeln!(out, "{}", result.output)?;
        if trace {
            for line in result.trace.render().lines() {
                writeln!(out, "  {line}")?;
            }
        }
    }
    Ok(())
}

pub fn cmd_match(a: &str, b: &str, side: Side, out: &mut dyn Write) -> Result<(), CliError> {
    let a = parse_lexical(a, side)?;
    let b = parse_lexical(b, side)?;
    match match_sentences(&a, &b)? {
        Some(m) => writeln!(out, "{m}")?,
        None => writeln!(out, "no match")?,
    }
    Ok(())
}

pub fn cmd_inspect(
    base: &RuleBase,
    direction: Direction,
    out: &mut dyn Write,
) -> Result<(), CliError> {
    let source = direction.source();
    for (id, rule) in base.ordered(source) {
        writeln!(
            out,
            "{:<5} terminals={} vars={}  {rule}",
            id.to_string(),
            rule.terminals(source),
            rule.vars()
        )?;
    }
    Ok(())
}
