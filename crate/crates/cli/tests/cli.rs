use std::io::Write;
use std::process::{Command, Output, Stdio};

use clap::Parser;
use symcalc::lmu::{parse_lmu, Lmu};
use symcalc_cli::repl::Session;
use symcalc_cli::{commands, Cli};

const WITNESS: &str = "< mu @a. < x | @b > | mu y. < x | @a > >";

fn symcalc(args: &[&str]) -> Output {
    Command::new(env!("CARGO_BIN_EXE_symcalc"))
        .args(args)
        .env_remove("SYMCALC_BUDGET")
        .output()
        .expect("binary runs")
}

fn stdout(o: &Output) -> String {
    String::from_utf8_lossy(&o.stdout).into_owned()
}

fn stderr(o: &Output) -> String {
    String::from_utf8_lossy(&o.stderr).into_owned()
}

fn session(term: &str) -> Session<Lmu> {
    let cli = Cli::parse_from(["symcalc", "--calculus", "lmu", "repl"]);
    let mut s = Session::new(commands::calculus::<Lmu>(&cli.global).unwrap(), &cli.global);
    s.load(parse_lmu(term).unwrap());
    s
}

#[test]
fn sn_on_the_witness() {
    let o = symcalc(&["sn", "--rules", "mu,mutilde", "-e", WITNESS]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("SN eta=1"), "{}", stdout(&o));
}

#[test]
fn graph_dot_has_three_nodes() {
    let o = symcalc(&["graph", "--format", "dot", "--rules", "mu,mutilde", "-e", WITNESS]);
    assert_eq!(o.status.code(), Some(0));
    let out = stdout(&o);
    assert!(out.starts_with("digraph"));
    assert_eq!(out.lines().filter(|l| l.contains("[label=") && !l.contains("->")).count(), 3);
    assert_eq!(out.lines().filter(|l| l.contains("->")).count(), 2);
}

#[test]
fn format_does_not_change_the_verdict() {
    let o = symcalc(&["sn", "--format", "json", "--rules", "mu,mutilde", "-e", WITNESS]);
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    assert_eq!(v["verdict"], "sn");
    assert_eq!(v["eta"], 1);
    assert_eq!(v["seed"], 0);
}

#[test]
fn check_reports_the_missing_arrow() {
    let o = symcalc(&["--calculus", "lmu", "check", "--context", "x:A", "-e", "(x x)"]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("expected an arrow type"), "{}", stderr(&o));
}

#[test]
fn check_prints_a_derivation() {
    let o = symcalc(&["--calculus", "lmu", "check", "--context", "x:A -> A, y:A", "-e", "(x y)"]);
    assert_eq!(o.status.code(), Some(0));
    assert_eq!(stdout(&o).lines().next(), Some("A"));
}

#[test]
fn parse_errors_point_at_the_position() {
    let o = symcalc(&["--calculus", "lmu", "parse", "-e", "(x x"]);
    assert_eq!(o.status.code(), Some(1));
    let err = stderr(&o);
    assert!(err.contains("byte 4"), "{err}");
    assert!(err.lines().last().unwrap().ends_with('^'));
}

#[test]
fn unknown_rules_are_user_errors() {
    let o = symcalc(&["sn", "--rules", "beta", "-e", WITNESS]);
    assert_eq!(o.status.code(), Some(1));
    assert!(stderr(&o).contains("unknown rule"));
}

#[test]
fn budget_exhaustion_exits_two() {
    let o = symcalc(&["--calculus", "lmu", "sn", "--budget", "2", "-e", "(mu @a. x mu @b. y)"]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).starts_with("BUDGET-EXHAUSTED"));
    let o = Command::new(env!("CARGO_BIN_EXE_symcalc"))
        .args(["--calculus", "lmu", "sn", "-e", "(mu @a. x mu @b. y)"])
        .env("SYMCALC_BUDGET", "2")
        .output()
        .unwrap();
    assert_eq!(o.status.code(), Some(2));
}

#[test]
fn omega_cycles_and_stops_reduction() {
    let omega = "(\\x. (x x) \\x. (x x))";
    let o = symcalc(&["--calculus", "lmu", "sn", "--rules", "beta", "-e", omega]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).starts_with("CYCLE prefix=0 cycle=1"));
    let o = symcalc(&["--calculus", "lmu", "reduce", "--max-steps", "5", "-e", omega]);
    assert_eq!(o.status.code(), Some(2));
    assert!(stdout(&o).contains("stopped after 5 steps"));
}

#[test]
fn term_from_file_and_stdin() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("t.lmu");
    std::fs::write(&path, "(\\z. x mu @b. y)\n").unwrap();
    let o = symcalc(&["--calculus", "lmu", "reduce", path.to_str().unwrap()]);
    assert!(stdout(&o).ends_with("normal form: x\n"), "{}", stdout(&o));

    let mut child = Command::new(env!("CARGO_BIN_EXE_symcalc"))
        .args(["--calculus", "lmu", "parse", "-"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"mu @a. [@a] x").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(stdout(&o).trim(), "mu @a. [@a] x");
}

#[test]
fn reduce_trace_replays() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let o = symcalc(&[
        "--calculus", "lmu", "reduce", "--format", "json", "--strategy", "random", "--seed", "7",
        "--out", trace.to_str().unwrap(), "-e", "((mu @a. x mu @b. y) (\\z. z w))",
    ]);
    assert_eq!(o.status.code(), Some(0));
    let text = std::fs::read_to_string(&trace).unwrap();
    assert!(text.lines().all(|l| l.contains("\"seed\":7")));
    let o = symcalc(&["--calculus", "lmu", "reduce", "--replay", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    let last: serde_json::Value = serde_json::from_str(text.lines().last().unwrap()).unwrap();
    let want = symcalc::lmu::LmuTerm::from_json(&last["to"]).unwrap();
    assert!(parse_lmu(stdout(&o).trim()).unwrap().alpha_eq(&want));
}

#[test]
fn tampered_trace_is_rejected() {
    let dir = tempfile::tempdir().unwrap();
    let trace = dir.path().join("t.jsonl");
    let o = symcalc(&["--calculus", "lmu", "reduce", "--format", "json", "-e", "(mu @a. x mu @b. y)"]);
    std::fs::write(&trace, stdout(&o).replace("\"rule\":\"mu\"", "\"rule\":\"mu_prime\"")).unwrap();
    let o = symcalc(&["--calculus", "lmu", "reduce", "--replay", trace.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(1));
}

#[test]
fn sweep_and_csv() {
    let dir = tempfile::tempdir().unwrap();
    let csv = dir.path().join("eta.csv");
    let o = symcalc(&["sweep", "--grammar", "restricted", "--max-cxty", "7", "--csv", csv.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("128 terms, sn=128"), "{}", stdout(&o));
    let rows = std::fs::read_to_string(&csv).unwrap();
    assert!(rows.starts_with("eta,count\n"));
    let total: usize = rows.lines().skip(1).map(|l| l.split(',').nth(1).unwrap().parse::<usize>().unwrap()).sum();
    assert_eq!(total, 128);
}

#[test]
fn props_reports_each_property() {
    let o = symcalc(&["props", "--max-cxty", "5", "--format", "json"]);
    assert_eq!(o.status.code(), Some(0));
    let v: serde_json::Value = serde_json::from_str(&stdout(&o)).unwrap();
    let reports = v["reports"].as_array().unwrap();
    assert_eq!(reports.len(), 3);
    assert_eq!(reports[2]["property"], 3);
    assert_eq!(reports[2]["suspects"].as_array().unwrap().len(), 0);
}

#[test]
fn repl_choices_pick_different_normal_forms() {
    let mut s = session("(mu @a. x mu @b. y)");
    assert!(s.show().contains("  2. mu_prime"));
    let r = s.handle("1");
    assert!(r.text.starts_with("mu @a. x\n  normal form"), "{}", r.text);
    let mut s = session("(mu @a. x mu @b. y)");
    let r = s.handle("2");
    assert!(r.text.starts_with("mu @b. y\n"), "{}", r.text);
}

#[test]
fn repl_undo_and_bad_index() {
    let mut s = session("(\\z. x mu @b. y)");
    let before = s.current().unwrap().clone();
    s.handle("1");
    assert_ne!(s.current().unwrap(), &before);
    s.handle("undo");
    assert_eq!(s.current().unwrap(), &before);
    let r = s.handle("7");
    assert!(r.text.starts_with("no redex 7; choose 1..2"));
    assert!(!r.quit);
    assert_eq!(s.sequence().unwrap().len(), 0);
    assert!(s.handle("quit").quit);
}

#[test]
fn repl_auto_matches_reduce() {
    let term = "((mu @a. x mu @b. y) (\\z. z w))";
    let mut s = session(term);
    let r = s.handle("auto leftmost");
    assert!(r.text.contains("normal form"));
    let o = symcalc(&["--calculus", "lmu", "reduce", "--format", "json", "-e", term]);
    assert_eq!(s.transcript().trim_end(), stdout(&o).trim_end());
}

#[test]
fn repl_transcript_replays() {
    let dir = tempfile::tempdir().unwrap();
    let path = dir.path().join("session.jsonl");
    let mut s = session("((\\u. u mu @a. x) mu @b. [@b] y)");
    s.handle("2");
    s.handle("1");
    s.handle(&format!("save {}", path.display()));
    let o = symcalc(&["--calculus", "lmu", "reduce", "--replay", path.to_str().unwrap()]);
    assert_eq!(o.status.code(), Some(0), "{}", stderr(&o));
    assert!(parse_lmu(stdout(&o).trim()).unwrap().alpha_eq(s.current().unwrap()));
}

#[test]
fn repl_over_stdin() {
    let mut child = Command::new(env!("CARGO_BIN_EXE_symcalc"))
        .args(["--calculus", "lmu", "repl", "-e", "(mu @a. x mu @b. y)"])
        .stdin(Stdio::piped())
        .stdout(Stdio::piped())
        .spawn()
        .unwrap();
    child.stdin.take().unwrap().write_all(b"2\nquit\n").unwrap();
    let o = child.wait_with_output().unwrap();
    assert_eq!(o.status.code(), Some(0));
    assert!(stdout(&o).contains("> mu @b. y\n"));
}
