use std::io::{BufRead, Write};

use gebmt_core::{Direction, Mode, RuleBase};

use crate::{cmd_translate, CliError};

const HELP: &str = "\
:dir [l1l2|l2l1]  switch (or set) the translation direction
:all              toggle printing every reading
:trace            toggle rule-application traces
:quit             leave";

/// Reads one sentence per line and prints its translations. Errors are
/// reported per line and do not end the session.
pub fn run(
    base: &RuleBase,
    input: &mut dyn BufRead,
    out: &mut dyn Write,
    err: &mut dyn Write,
) -> Result<(), CliError> {
    let mut direction = Direction::L1ToL2;
    let mut mode = Mode::First;
    let mut trace = false;

    writeln!(
        out,
        "{} rules loaded; direction {direction}; :help for commands",
        base.len()
    )?;
    let mut line = String::new();
    loop {
        write!(out, "> ")?;
        out.flush()?;
        line.clear();
        if input.read_line(&mut line)? == 0 {
            writeln!(out)?;
            return Ok(());
        }
        let text = line.trim();
        let mut words = text.split_whitespace();
        match words.next() {
            None => continue,
            Some(":quit") | Some(":q") => return Ok(()),
            Some(":help") => writeln!(out, "{HELP}")?,
            Some(":all") => {
                mode = if mode == Mode::All {
                    Mode::First
                } else {
                    Mode::All
                };
                writeln!(out, "all readings: {}", on_off(mode == Mode::All))?;
            }
            Some(":trace") => {
                trace = !trace;
                writeln!(out, "trace: {}", on_off(trace))?;
            }
            Some(":dir") => {
                direction = match words.next() {
                    None => direction.reversed(),
                    Some("l1l2") => Direction::L1ToL2,
                    Some("l2l1") => Direction::L2ToL1,
                    Some(other) => {
                        writeln!(err, "error: unknown direction `{other}`")?;
                        continue;
                    }
                };
                writeln!(out, "direction: {direction}")?;
            }
            Some(cmd) if cmd.starts_with(':') => {
                writeln!(err, "error: unknown command `{cmd}` (try :help)")?;
            }
            Some(_) => {
                if let Err(e) = cmd_translate(base, direction, mode, trace, text, out) {
                    writeln!(err, "error: {e}")?;
                }
            }
        }
    }
}

fn on_off(flag: bool) -> &'static str {
    if flag {
        "on"
    } else {
        "off"
    }
}
