//! Step-by-step reduction session. `Session::handle` is the whole command
//! language; `run_io` only adds a prompt loop around it.

use std::fs;
use std::io::{self, BufRead, Write};

use symcalc::rewrite::{normalize, trace_lines, RuleTag, Sequence, Step};

use crate::args::Global;
use crate::commands::{render_steps, strategy};
use crate::front::Front;

const HELP: &str = "\
commands:
  <n>              contract redex number n
  undo             take back the last step
  auto <strategy>  reduce to normal form (leftmost, rightmost, random, prefer:<rule>)
  type             typecheck the current term
  show             redisplay the term and its redexes
  trace            print the session as a JSON-lines trace
  save <file>      write that trace to a file
  load <term>      start over from a new term
  help, quit";

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Reply {
    pub text: String,
    pub quit: bool,
}

impl Reply {
    fn say(text: impl Into<String>) -> Self {
        Reply {
            text: text.into(),
            quit: false,
        }
    }
}

pub struct Session<C: Front> {
    calc: C,
    context: String,
    seed: u64,
    max_steps: usize,
    seq: Option<Sequence<C::Term, C::Rule>>,
}

impl<C: Front> Session<C> {
    pub fn new(calc: C, g: &Global) -> Self {
        Session {
            calc,
            context: g.context.clone(),
            seed: g.seed,
            max_steps: g.max_steps,
            seq: None,
        }
    }

    pub fn load(&mut self, t: C::Term) {
        self.seq = Some(Sequence::empty(t));
    }

    pub fn current(&self) -> Option<&C::Term> {
        self.seq.as_ref().map(|s| s.last())
    }

    pub fn sequence(&self) -> Option<&Sequence<C::Term, C::Rule>> {
        self.seq.as_ref()
    }

    /// The JSON-lines transcript, replayable with `reduce --replay`.
    pub fn transcript(&self) -> String {
        match &self.seq {
            Some(s) => {
                let mut out = trace_lines(&self.calc, s, Some(self.seed)).join("\n");
                out.push('\n');
                out
            }
            None => String::new(),
        }
    }

    /// The current term followed by its numbered redexes.
    pub fn show(&self) -> String {
        let Some(t) = self.current() else {
            return "no term loaded; use `load <term>`".to_string();
        };
        let redexes = self.calc.redexes(t);
        let mut out = format!("{t}\n");
        if redexes.is_empty() {
            out.push_str("  normal form");
        }
        for (i, r) in redexes.iter().enumerate() {
            let reduct = self
                .calc
                .contract(t, r)
                .map(|u| u.to_string())
                .unwrap_or_else(|e| format!("<{e}>"));
            out.push_str(&format!("  {}. {} {:?}  ~> {reduct}\n", i + 1, r.rule.tag(), r.position));
        }
        out.trim_end().to_string()
    }

    pub fn handle(&mut self, line: &str) -> Reply {
        let line = line.trim();
        let (cmd, rest) = line.split_once(char::is_whitespace).unwrap_or((line, ""));
        let rest = rest.trim();
        match cmd {
            "" | "show" => Reply::say(self.show()),
            "help" | "?" => Reply::say(HELP),
            "quit" | "exit" | "q" => Reply {
                text: String::new(),
                quit: true,
            },
            "load" => match C::parse_term(rest) {
                Ok(t) => {
                    self.load(t);
                    Reply::say(self.show())
                }
                Err(e) => Reply::say(e.message),
            },
            _ if self.seq.is_none() => Reply::say(self.show()),
            "undo" => {
                let seq = self.seq.as_mut().expect("loaded");
                if seq.steps.pop().is_none() {
                    return Reply::say(format!("nothing to undo\n{}", self.show()));
                }
                Reply::say(self.show())
            }
            "auto" => self.auto(if rest.is_empty() { "leftmost" } else { rest }),
            "type" => {
                let t = self.current().expect("loaded");
                match C::typecheck(t, &self.context) {
                    Ok(c) => Reply::say(format!("{}\n{}", c.summary, c.derivation.trim_end())),
                    Err(e) => Reply::say(e.message),
                }
            }
            "trace" => Reply::say(self.transcript().trim_end()),
            "save" if rest.is_empty() => Reply::say("usage: save <file>"),
            "save" => match fs::write(rest, self.transcript()) {
                Ok(()) => Reply::say(format!("saved {} steps to {rest}", self.seq.as_ref().map_or(0, |s| s.len()))),
                Err(e) => Reply::say(format!("{rest}: {e}")),
            },
            _ => match line.parse::<usize>() {
                Ok(n) => self.step(n),
                Err(_) => Reply::say(format!("unknown command `{cmd}`; type `help`")),
            },
        }
    }

    fn step(&mut self, n: usize) -> Reply {
        let seq = self.seq.as_mut().expect("loaded");
        let cur = seq.last().clone();
        let redexes = self.calc.redexes(&cur);
        if n == 0 || n > redexes.len() {
            let range = match redexes.len() {
                0 => "the term is normal".to_string(),
                k => format!("choose 1..{k}"),
            };
            return Reply::say(format!("no redex {n}; {range}\n{}", self.show()));
        }
        let r = redexes[n - 1].clone();
        match self.calc.contract(&cur, &r) {
            Ok(to) => {
                seq.steps.push(Step { from: cur, redex: r, to });
                Reply::say(self.show())
            }
            Err(e) => Reply::say(format!("{e}\n{}", self.show())),
        }
    }

    fn auto(&mut self, name: &str) -> Reply {
        let strat = match strategy::<C::Rule>(name, self.seed) {
            Ok(s) => s,
            Err(e) => return Reply::say(e.message),
        };
        let seq = self.seq.as_mut().expect("loaded");
        let (run, done) = match normalize(&self.calc, seq.last(), &strat, self.max_steps) {
            Ok((_, run)) => (run, true),
            Err(e) => (e.partial, false),
        };
        let first = seq.len() + 1;
        let mut text = render_steps::<C>(&run, first);
        seq.steps.extend(run.steps);
        if !done {
            text.push_str(&format!("stopped after {} steps\n", self.max_steps));
        }
        text.push_str(&self.show());
        Reply::say(text)
    }
}

pub fn run_io<C: Front>(session: &mut Session<C>, input: impl BufRead, mut out: impl Write) -> io::Result<()> {
    writeln!(out, "{}", session.show())?;
    write!(out, "> ")?;
    out.flush()?;
    for line in input.lines() {
        let reply = session.handle(&line?);
        if reply.quit {
            break;
        }
        writeln!(out, "{}", reply.text)?;
        write!(out, "> ")?;
        out.flush()?;
    }
    writeln!(out)?;
    Ok(())
}
