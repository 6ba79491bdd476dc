use std::fs;
use std::path::{Path, PathBuf};
use std::process::Command;

use tempfile::TempDir;

const EXAMPLE1: &str = "\
i see+PAST you at the garden\tsen+ACC bahçe+LOC gör+PAST+1SG
i see+PAST you at the party\tsen+ACC parti+LOC gör+PAST+1SG
";

const EXAMPLE3: &str = "\
i go+PAST\tgit+PAST+1SG
you go+PAST\tgit+PAST+2SG
i come+PAST\tgel+PAST+1SG
";

struct Output {
    code: i32,
    stdout: String,
    stderr: String,
}

fn gebmt(args: &[&str]) -> Output {
    gebmt_with_input(args, "")
}

fn gebmt_with_input(args: &[&str], stdin: &str) -> Output {
    let mut argv = vec!["gebmt"];
    argv.extend_from_slice(args);
    let (mut out, mut err) = (Vec::new(), Vec::new());
    let code = gebmt_cli::run(argv, &mut stdin.as_bytes(), &mut out, &mut err);
    Output {
        code,
        stdout: String::from_utf8(out).unwrap(),
        stderr: String::from_utf8(err).unwrap(),
    }
}

fn write(dir: &Path, name: &str, text: &str) -> PathBuf {
    let path = dir.join(name);
    fs::write(&path, text).unwrap();
    path
}

fn learned(dir: &TempDir, corpus: &str) -> PathBuf {
    let corpus = write(dir.path(), "corpus.tsv", corpus);
    let rules = dir.path().join("rules.txt");
    let out = gebmt(&[
        "learn",
        "--corpus",
        corpus.to_str().unwrap(),
        "--out",
        rules.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0, "{}", out.stderr);
    rules
}

#[test]
fn learn_writes_rule_file_and_report() {
    let dir = TempDir::new().unwrap();
    let corpus = write(dir.path(), "corpus.tsv", EXAMPLE1);
    let rules = dir.path().join("rules.txt");
    let out = gebmt(&[
        "learn",
        "--corpus",
        corpus.to_str().unwrap(),
        "--out",
        rules.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "pass 1: learned 3, skipped 0\n\
         pass 2: learned 0, skipped 0\n\
         rules: 5 (2 from examples, 3 learned)\n\
         unresolved pairs: 0\n\
         converged after 2 passes\n"
    );
    assert_eq!(
        fs::read_to_string(&rules).unwrap(),
        "fact: i see+past you at the garden ||| sen+acc bahçe+loc gör+past+1sg\n\
         fact: i see+past you at the party ||| sen+acc parti+loc gör+past+1sg\n\
         fact: garden ||| bahçe\n\
         fact: party ||| parti\n\
         tmpl: i see+past you at the $1 ||| sen+acc $1 +loc gör+past+1sg\n"
    );
}

#[test]
fn learn_is_byte_identical_across_runs() {
    let dir = TempDir::new().unwrap();
    let first = fs::read(learned(&dir, EXAMPLE3)).unwrap();
    let second = fs::read(learned(&dir, EXAMPLE3)).unwrap();
    assert_eq!(first, second);
}

#[test]
fn learn_single_example() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, "i go+PAST\tgit+PAST+1SG\n");
    assert_eq!(
        fs::read_to_string(rules).unwrap(),
        "fact: i go+past ||| git+past+1sg\n"
    );
}

#[test]
fn learn_rejects_empty_and_malformed_corpora() {
    let dir = TempDir::new().unwrap();
    let out_path = dir.path().join("rules.txt");
    let empty = write(dir.path(), "empty.tsv", "");
    let out = gebmt(&[
        "learn",
        "--corpus",
        empty.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("corpus is empty"), "{}", out.stderr);

    let bad = write(dir.path(), "bad.tsv", "a\tb\nno tab\n");
    let out = gebmt(&[
        "learn",
        "--corpus",
        bad.to_str().unwrap(),
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);

    let out = gebmt(&[
        "learn",
        "--corpus",
        "/nonexistent/corpus.tsv",
        "--out",
        out_path.to_str().unwrap(),
    ]);
    assert_eq!(out.code, 1);
}

#[test]
fn translate_both_directions() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE1);
    let rules = rules.to_str().unwrap();
    let out = gebmt(&[
        "translate",
        "--rules",
        rules,
        "--dir",
        "l1l2",
        "i see+PAST you at the garden",
    ]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (0, "sen+acc bahçe+loc gör+past+1sg\n")
    );
    let out = gebmt(&[
        "translate",
        "--rules",
        rules,
        "--dir",
        "l2l1",
        "sen+acc parti+loc gör+past+1sg",
    ]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (0, "i see+past you at the party\n")
    );
}

#[test]
fn translate_all_with_trace() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE3);
    let out = gebmt(&[
        "translate",
        "--rules",
        rules.to_str().unwrap(),
        "--dir",
        "l2l1",
        "--all",
        "--trace",
        "gel+past+1sg",
    ]);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "i come+past\n  r2, {}\n\
         i come+past\n  r8, {$1 = \"gel\"}\n    r7, {}\n"
    );
}

#[test]
fn untranslatable_exits_with_two() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE3);
    let out = gebmt(&[
        "translate",
        "--rules",
        rules.to_str().unwrap(),
        "--dir",
        "l1l2",
        "you come+past",
    ]);
    assert_eq!(out.code, 2);
    assert!(out.stderr.contains("untranslatable"), "{}", out.stderr);
    assert!(out.stderr.contains("you come+past"), "{}", out.stderr);
}

#[test]
fn bad_rule_file_reports_line() {
    let dir = TempDir::new().unwrap();
    let rules = write(
        dir.path(),
        "rules.txt",
        "fact: a ||| b\ntmpl: $1 $2 ||| x\n",
    );
    let out = gebmt(&[
        "translate",
        "--rules",
        rules.to_str().unwrap(),
        "--dir",
        "l1l2",
        "a",
    ]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("line 2"), "{}", out.stderr);
}

#[test]
fn usage_errors_exit_with_one() {
    let out = gebmt(&["translate", "--bogus"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("Usage"), "{}", out.stderr);
    assert_eq!(gebmt(&["frobnicate"]).code, 1);
    assert_eq!(
        gebmt(&["learn", "--corpus", "x", "--out", "y", "--max-passes", "0"]).code,
        1
    );
    assert_eq!(gebmt(&["--help"]).code, 0);
}

#[test]
fn match_rendering() {
    let out = gebmt(&["match", "--side", "l1", "it is a book", "it is a pencil"]);
    assert_eq!(
        (out.code, out.stdout.as_str()),
        (0, "[it is a] · book : pencil\n")
    );
    let out = gebmt(&["match", "--side", "l1", "i go+past", "i go+past"]);
    assert_eq!(out.stdout, "[i go+past]\n");
    let out = gebmt(&["match", "--side", "l1", "a b", "b a"]);
    assert_eq!(out.stdout, "no match\n");
    let out = gebmt(&["match", "--side", "l2", "go++past", "x"]);
    assert_eq!(out.code, 1);
    assert!(out.stderr.contains("malformed morpheme"));
}

#[test]
fn inspect_lists_rules_most_specific_first() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE1);
    let out = gebmt(&["inspect", "--rules", rules.to_str().unwrap()]);
    assert_eq!(out.code, 0);
    let lines: Vec<&str> = out.stdout.lines().collect();
    assert_eq!(lines.len(), 5);
    assert!(
        lines[0].starts_with("r0    terminals=7 vars=0  fact: i see+past"),
        "{}",
        lines[0]
    );
    assert!(
        lines[2].starts_with("r4    terminals=6 vars=1  tmpl:"),
        "{}",
        lines[2]
    );
    assert!(lines[4].contains("fact: party ||| parti"));
}

#[test]
fn repl_session() {
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE1);
    let session = "i see+PAST you at the garden\n\
                   :dir\n\
                   sen+acc parti+loc gör+past+1sg\n\
                   :trace\n\
                   sen+acc bahçe+loc gör+past+1sg\n\
                   :all\n\
                   you see+past me\n\
                   :bogus\n\
                   :quit\n\
                   never read\n";
    let out = gebmt_with_input(&["repl", "--rules", rules.to_str().unwrap()], session);
    assert_eq!(out.code, 0);
    assert_eq!(
        out.stdout,
        "5 rules loaded; direction l1l2; :help for commands\n\
         > sen+acc bahçe+loc gör+past+1sg\n\
         > direction: l2l1\n\
         > i see+past you at the party\n\
         > trace: on\n\
         > i see+past you at the garden\n  r0, {}\n\
         > all readings: on\n\
         > > > "
    );
    assert!(out.stderr.contains("untranslatable"), "{}", out.stderr);
    assert!(
        out.stderr.contains("unknown command `:bogus`"),
        "{}",
        out.stderr
    );
}

#[test]
fn binary_exit_codes() {
    let bin = env!("CARGO_BIN_EXE_gebmt");
    let dir = TempDir::new().unwrap();
    let rules = learned(&dir, EXAMPLE3);
    let status = Command::new(bin)
        .args([
            "translate",
            "--rules",
            rules.to_str().unwrap(),
            "--dir",
            "l1l2",
            "you come+past",
        ])
        .output()
        .unwrap();
    assert_eq!(status.status.code(), Some(2));
    let status = Command::new(bin).arg("--nope").output().unwrap();
    assert_eq!(status.status.code(), Some(1));
    let ok = Command::new(bin)
        .args([
            "translate",
            "--rules",
            rules.to_str().unwrap(),
            "--dir",
            "l1l2",
            "i go+past",
        ])
        .output()
        .unwrap();
    assert_eq!(ok.status.code(), Some(0));
    assert_eq!(String::from_utf8(ok.stdout).unwrap(), "git+past+1sg\n");
}
