//! Subcommand drivers. Each returns rendered output and an exit code; the
//! binary only prints.

use std::fmt::Write as _;
use std::fs;
use std::io::{self, Read};
use std::path::Path;

use serde_json::{json, Value};

use symcalc::analyzer::enumerate::{
    default_lmu_context, enumerate_lbar, enumerate_lmu, enumerate_typed_lbar, enumerate_typed_lmu,
};
use symcalc::analyzer::props::{search_counterexamples, Property};
use symcalc::analyzer::{build_graph, sn_check, sweep_sn, EnumSpec, Grammar, SnVerdict};
use symcalc::lbar::{Lbar, LbarRule};
use symcalc::lmu::{Lmu, LmuRule};
use symcalc::rewrite::{normalize, parse_trace, trace_lines, Calculus, RuleSet, RuleTag, Sequence, Strategy};

use crate::args::{CalculusName, Cli, Command, Format, Global, Input, DEFAULT_BUDGET, DEFAULT_PROPS_BUDGET};
use crate::front::Front;
use crate::{repl, CliError, Output, EXIT_BUDGET, EXIT_OK};

pub fn run(cli: &Cli) -> Result<Output, CliError> {
    let g = &cli.global;
    match &cli.command {
        Command::Sweep {
            grammar,
            max_cxty,
            typed,
            csv,
        } => sweep(g, grammar.as_deref(), *max_cxty, *typed, csv.as_deref()),
        Command::Props { property, max_cxty } => props(g, *property, *max_cxty),
        cmd => match g.calculus {
            CalculusName::Lbar => dispatch::<Lbar>(g, cmd),
            CalculusName::Lmu => dispatch::<Lmu>(g, cmd),
        },
    }
}

fn dispatch<C: Front>(g: &Global, cmd: &Command) -> Result<Output, CliError> {
    match cmd {
        Command::Parse(input) => parse::<C>(g, input),
        Command::Check(input) => check::<C>(g, input),
        Command::Reduce { input, replay } => match replay {
            Some(path) => replay_trace::<C>(g, input, path),
            None => reduce::<C>(g, input),
        },
        Command::Graph(input) => graph::<C>(g, input),
        Command::Sn(input) => sn::<C>(g, input),
        Command::Repl(input) => {
            let term = if input.expr.is_some() || input.file.is_some() {
                Some(read_term::<C>(input)?)
            } else {
                None
            };
            let mut session = repl::Session::new(calculus::<C>(g)?, g);
            if let Some(t) = term {
                session.load(t);
            }
            let stdin = io::stdin();
            let stdout = io::stdout();
            repl::run_io(&mut session, stdin.lock(), stdout.lock())
                .map_err(|e| CliError::user(format!("repl: {e}")))?;
            Ok(Output::ok(""))
        }
        Command::Sweep { .. } | Command::Props { .. } => unreachable!("handled by run"),
    }
}

fn read_text(input: &Input) -> Result<String, CliError> {
    if let Some(e) = &input.expr {
        return Ok(e.clone());
    }
    match &input.file {
        Some(p) if p.as_os_str() != "-" => {
            fs::read_to_string(p).map_err(|e| CliError::user(format!("{}: {e}", p.display())))
        }
        _ => {
            let mut s = String::new();
            io::stdin()
                .read_to_string(&mut s)
                .map_err(|e| CliError::user(format!("stdin: {e}")))?;
            Ok(s)
        }
    }
}

pub fn read_term<C: Front>(input: &Input) -> Result<C::Term, CliError> {
    let text = read_text(input)?;
    if input.json_input {
        let v: Value = serde_json::from_str(&text).map_err(|e| CliError::user(format!("json: {e}")))?;
        C::term_from_json(&v)
    } else {
        C::parse_term(&text)
    }
}

pub fn rules<C: Front>(g: &Global, default: RuleSet<C::Rule>) -> Result<RuleSet<C::Rule>, CliError> {
    match &g.rules {
        None => Ok(default),
        Some(list) => RuleSet::parse(list).map_err(|e| {
            let tags: Vec<&str> = C::Rule::ALL.iter().map(|r| r.tag()).collect();
            CliError::user(format!("{e} for {} (expected one of {})", C::NAME, tags.join(", ")))
        }),
    }
}

pub fn calculus<C: Front>(g: &Global) -> Result<C, CliError> {
    C::make(rules::<C>(g, C::default_rules())?, &g.context)
}

pub fn strategy<R: RuleTag>(name: &str, seed: u64) -> Result<Strategy, CliError> {
    let s = Strategy::parse(name, seed).map_err(|e| CliError::user(e.to_string()))?;
    if let Strategy::Prefer(tag) = &s {
        if R::from_tag(tag).is_none() {
            return Err(CliError::user(format!("unknown rule `{tag}` in strategy")));
        }
    }
    Ok(s)
}

fn budget(g: &Global) -> usize {
    g.budget.unwrap_or(DEFAULT_BUDGET)
}

fn json_text(v: &Value) -> String {
    serde_json::to_string_pretty(v).expect("values serialize")
}

fn parse<C: Front>(g: &Global, input: &Input) -> Result<Output, CliError> {
    let calc = calculus::<C>(g)?;
    let t = read_term::<C>(input)?;
    Ok(Output::ok(match g.format {
        Format::Json => json_text(&json!({
            "term": t.to_string(),
            "ast": calc.to_json(&t),
            "cxty": calc.cxty(&t),
            "seed": g.seed,
        })),
        _ => t.to_string(),
    }))
}

fn check<C: Front>(g: &Global, input: &Input) -> Result<Output, CliError> {
    let t = read_term::<C>(input)?;
    let c = C::typecheck(&t, &g.context)?;
    Ok(Output::ok(match g.format {
        Format::Json => {
            let mut v = c.json;
            v["term"] = json!(t.to_string());
            v["seed"] = json!(g.seed);
            json_text(&v)
        }
        _ => format!("{}\n{}", c.summary, c.derivation.trim_end()),
    }))
}

/// Numbered steps, one per line: `1. mu [0]  <reduct>`.
pub fn render_steps<C: Calculus>(seq: &Sequence<C::Term, C::Rule>, first: usize) -> String {
    let mut out = String::new();
    for (i, s) in seq.steps.iter().enumerate() {
        let _ = writeln!(out, "{}. {} {:?}  {}", first + i, s.redex.rule.tag(), s.redex.position, s.to);
    }
    out
}

fn reduce<C: Front>(g: &Global, input: &Input) -> Result<Output, CliError> {
    let calc = calculus::<C>(g)?;
    let t = read_term::<C>(input)?;
    let strat = strategy::<C::Rule>(&g.strategy, g.seed)?;
    let (seq, done) = match normalize(&calc, &t, &strat, g.max_steps) {
        Ok((_, seq)) => (seq, true),
        Err(e) => (e.partial, false),
    };
    let code = if done { EXIT_OK } else { EXIT_BUDGET };
    let text = match g.format {
        Format::Json => trace_lines(&calc, &seq, Some(g.seed)).join("\n"),
        _ => {
            let mut out = format!("strategy {} seed {}\n0. {}\n", g.strategy, g.seed, t);
            out.push_str(&render_steps::<C>(&seq, 1));
            if done {
                let _ = write!(out, "normal form: {}", seq.last());
            } else {
                let _ = write!(out, "stopped after {} steps: {}", seq.len(), seq.last());
            }
            out
        }
    };
    Ok(Output::with_code(code, text))
}

/// Replays a JSON-lines trace, checking every recorded endpoint. The start
/// term is the input if one is given, otherwise the first line's `from`.
pub fn replay_text<C: Front>(calc: &C, start: Option<C::Term>, trace: &str) -> Result<C::Term, CliError> {
    let lines = parse_trace::<C::Rule>(trace).map_err(|e| CliError::user(format!("trace {e}")))?;
    let mut cur = match (start, lines.first()) {
        (Some(t), _) => t,
        (None, Some((_, l))) => C::term_from_json(&l.from)?,
        (None, None) => return Err(CliError::user("empty trace and no start term")),
    };
    for (i, (redex, line)) in lines.iter().enumerate() {
        let from = C::term_from_json(&line.from)?;
        if calc.key(&from) != calc.key(&cur) {
            return Err(CliError::user(format!("trace step {}: `from` is not the current term {cur}", i + 1)));
        }
        cur = calc
            .contract(&cur, redex)
            .map_err(|e| CliError::user(format!("trace step {}: {e}", i + 1)))?;
        let to = C::term_from_json(&line.to)?;
        if calc.key(&to) != calc.key(&cur) {
            return Err(CliError::user(format!("trace step {}: reduct {cur} differs from `to` {to}", i + 1)));
        }
    }
    Ok(cur)
}

fn replay_trace<C: Front>(g: &Global, input: &Input, path: &Path) -> Result<Output, CliError> {
    let calc = calculus::<C>(g)?;
    let trace = fs::read_to_string(path).map_err(|e| CliError::user(format!("{}: {e}", path.display())))?;
    let start = if input.expr.is_some() || input.file.is_some() {
        Some(read_term::<C>(input)?)
    } else {
        None
    };
    let t = replay_text(&calc, start, &trace)?;
    Ok(Output::ok(match g.format {
        Format::Json => json_text(&json!({"term": t.to_string(), "ast": calc.to_json(&t), "seed": g.seed})),
        _ => t.to_string(),
    }))
}

fn graph<C: Front>(g: &Global, input: &Input) -> Result<Output, CliError> {
    let calc = calculus::<C>(g)?;
    let t = read_term::<C>(input)?;
    let gr = build_graph(&calc, &t, budget(g));
    let text = match g.format {
        Format::Dot => gr.to_dot().trim_end().to_string(),
        Format::Json => json_text(&json!({
            "nodes": gr.nodes().map(|n| json!({
                "id": n.index(),
                "term": gr.term(n).to_string(),
                "normal": gr.is_normal(n),
            })).collect::<Vec<_>>(),
            "edges": gr.edges().map(|(s, r, t)| json!({
                "from": s.index(),
                "to": t.index(),
                "rule": r.rule.tag(),
                "position": r.position,
            })).collect::<Vec<_>>(),
            "complete": gr.complete,
            "node_budget": budget(g),
            "seed": g.seed,
        })),
        Format::Text => {
            let mut out = String::new();
            for n in gr.nodes() {
                let mark = if gr.is_normal(n) { "  (normal)" } else { "" };
                let _ = writeln!(out, "n{}: {}{mark}", n.index(), gr.term(n));
            }
            for (s, r, t) in gr.edges() {
                let _ = writeln!(out, "n{} -> n{}  {} {:?}", s.index(), t.index(), r.rule.tag(), r.position);
            }
            let _ = write!(
                out,
                "nodes={} edges={} {}",
                gr.node_count(),
                gr.edge_count(),
                if gr.complete { "complete" } else { "incomplete" }
            );
            out
        }
    };
    Ok(Output::with_code(if gr.complete { EXIT_OK } else { EXIT_BUDGET }, text))
}

fn sn<C: Front>(g: &Global, input: &Input) -> Result<Output, CliError> {
    let calc = calculus::<C>(g)?;
    let t = read_term::<C>(input)?;
    let v = sn_check(&calc, &t, budget(g));
    let code = if matches!(v, SnVerdict::BudgetExhausted { .. }) { EXIT_BUDGET } else { EXIT_OK };
    let text = match g.format {
        Format::Json => {
            let mut j = v.to_json();
            j["term"] = json!(t.to_string());
            j["rules"] = json!(calc.rules().tags());
            j["node_budget"] = json!(budget(g));
            j["seed"] = json!(g.seed);
            json_text(&j)
        }
        _ => {
            let mut out = v.summary();
            if let SnVerdict::CycleFound(w) = &v {
                for (label, path) in [("prefix", &w.prefix), ("cycle", &w.cycle)] {
                    let steps: Vec<String> = path.iter().map(|r| format!("{} {:?}", r.rule.tag(), r.position)).collect();
                    let steps = if steps.is_empty() { "-".to_string() } else { steps.join(", ") };
                    let _ = write!(out, "\n{label}: {steps}");
                }
            }
            out
        }
    };
    Ok(Output::with_code(code, text))
}

fn sweep(g: &Global, grammar: Option<&str>, max_cxty: usize, typed: bool, csv: Option<&Path>) -> Result<Output, CliError> {
    let grammar = match grammar {
        Some(s) => Grammar::parse(s).ok_or_else(|| CliError::user(format!("unknown grammar `{s}` (expected lbar, restricted or lmu)")))?,
        None => match g.calculus {
            CalculusName::Lbar => Grammar::Lbar,
            CalculusName::Lmu => Grammar::Lmu,
        },
    };
    let mut spec = EnumSpec::new(grammar, max_cxty);
    if typed {
        spec = spec.typed();
    }
    let pool = &spec.pool;
    let b = budget(g);
    let report = match grammar {
        Grammar::Lbar | Grammar::LbarRestricted => {
            let restricted = grammar == Grammar::LbarRestricted;
            let default = if restricted { LbarRule::mu_mutilde() } else { LbarRule::logical() };
            let calc = Lbar::new(rules::<Lbar>(g, default)?);
            let terms = if typed {
                enumerate_typed_lbar(max_cxty, restricted, &spec.atoms)
            } else {
                enumerate_lbar(max_cxty, restricted, pool)
            };
            sweep_sn(&calc, &spec.describe(), &terms, b)
        }
        Grammar::Lmu => {
            let (calc, terms) = if typed {
                let calc = Lmu::new(rules::<Lmu>(g, LmuRule::beta_mu_mu_prime())?).with_context(default_lmu_context());
                (calc, enumerate_typed_lmu(max_cxty, &spec.atoms))
            } else {
                (Lmu::new(rules::<Lmu>(g, LmuRule::mu_mu_prime())?), enumerate_lmu(max_cxty, pool))
            };
            sweep_sn(&calc, &spec.describe(), &terms, b)
        }
    };
    if let Some(path) = csv {
        fs::write(path, report.eta_csv()).map_err(|e| CliError::user(format!("{}: {e}", path.display())))?;
    }
    let code = if report.budget > 0 { EXIT_BUDGET } else { EXIT_OK };
    let text = match g.format {
        Format::Json => {
            let mut j = report.to_json();
            j["seed"] = json!(g.seed);
            json_text(&j)
        }
        _ => {
            let mut out = format!("{} rules={}", report.summary(), report.rules.join(","));
            for v in &report.violations {
                let _ = write!(out, "\n  {} {}", v["verdict"]["verdict"].as_str().unwrap_or("?"), v["term"].as_str().unwrap_or("?"));
            }
            out
        }
    };
    Ok(Output::with_code(code, text))
}

fn props(g: &Global, property: Option<u8>, max_cxty: usize) -> Result<Output, CliError> {
    let props: Vec<Property> = match property {
        None => vec![Property::Lambda, Property::Mu, Property::Head],
        Some(n) => vec![Property::from_number(n).ok_or_else(|| CliError::user(format!("unknown property {n} (expected 1, 2 or 3)")))?],
    };
    let b = g.budget.unwrap_or(DEFAULT_PROPS_BUDGET);
    let reports: Vec<_> = props.iter().map(|&p| search_counterexamples(p, max_cxty, b)).collect();
    let text = match g.format {
        Format::Json => json_text(&json!({
            "seed": g.seed,
            "reports": reports.iter().map(|r| r.to_json()).collect::<Vec<_>>(),
        })),
        _ => {
            let mut out = String::new();
            for r in &reports {
                let _ = writeln!(out, "{}", r.property.statement());
                let _ = writeln!(out, "  {} (cxty<={max_cxty}, budget {b})", r.summary());
                for s in &r.suspects {
                    let _ = writeln!(out, "  suspect: {}", s.conclusion);
                }
            }
            out.trim_end().to_string()
        }
    };
    Ok(Output::ok(text))
}
