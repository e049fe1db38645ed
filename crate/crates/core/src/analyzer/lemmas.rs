//! Structural lemmas as queries over reduction graphs.
//!
//! Each checker returns a [`LemmaOutcome`]; a `Fails` outcome carries the
//! offending term and is a genuine counterexample within the explored
//! graphs, while `Inconclusive` means a graph was cut off by the budget.

use std::collections::HashSet;

use serde_json::{json, Value};

use super::graph::{build_graph, ReductionGraph};
use super::sn::{sn_check, SnVerdict};
use crate::lbar::{engine as lbar_engine, Lbar, LbarRule, LbarTerm, Sort};
use crate::lmu::{engine as lmu_engine, Lmu, LmuRule, LmuSubst, LmuTerm};
use crate::names::{FreshSupply, Name};
use crate::rewrite::{Calculus, RuleSet, RuleTag};

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum LemmaOutcome {
    Holds,
    /// The hypothesis is not met, so there is nothing to check.
    Vacuous,
    Fails(String),
    Inconclusive(String),
}

impl LemmaOutcome {
    pub fn is_failure(&self) -> bool {
        matches!(self, LemmaOutcome::Fails(_))
    }

    pub fn kind(&self) -> &'static str {
        match self {
            LemmaOutcome::Holds => "holds",
            LemmaOutcome::Vacuous => "vacuous",
            LemmaOutcome::Fails(_) => "fails",
            LemmaOutcome::Inconclusive(_) => "inconclusive",
        }
    }
}

/// `⟨t, α⟩` for an l-term, `⟨x, t⟩` for an r-term, with a variable fresh
/// for `t`. Commands have no such wrapper.
pub fn fresh_cut(t: &LbarTerm) -> Option<LbarTerm> {
    let mut names = HashSet::new();
    t.all_names(&mut names);
    let mut fresh = FreshSupply::new(names);
    match t.sort() {
        Sort::LTerm => Some(LbarTerm::Command(
            Box::new(t.clone()),
            Box::new(LbarTerm::RVar(fresh.fresh(&Name::new("c")))),
        )),
        Sort::RTerm => Some(LbarTerm::Command(
            Box::new(LbarTerm::LVar(fresh.fresh(&Name::new("z")))),
            Box::new(t.clone()),
        )),
        Sort::Command => None,
    }
}

/// If `t` is SN then so is its [`fresh_cut`].
pub fn check_fresh_cut(calc: &Lbar, t: &LbarTerm, budget: usize) -> LemmaOutcome {
    let Some(w) = fresh_cut(t) else { return LemmaOutcome::Vacuous };
    match sn_check(calc, t, budget) {
        SnVerdict::Sn { .. } => {}
        SnVerdict::CycleFound(_) => return LemmaOutcome::Vacuous,
        SnVerdict::BudgetExhausted { .. } => return LemmaOutcome::Inconclusive(t.to_string()),
    }
    match sn_check(calc, &w, budget) {
        SnVerdict::Sn { .. } => LemmaOutcome::Holds,
        SnVerdict::CycleFound(_) => LemmaOutcome::Fails(w.to_string()),
        SnVerdict::BudgetExhausted { .. } => LemmaOutcome::Inconclusive(w.to_string()),
    }
}

/// A disjunct of the pair lemma: reducts of the two components whose root
/// redex `rule` has a non-SN contractum.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Decomposition<T, R> {
    pub rule: R,
    pub left: T,
    pub right: T,
    pub contractum: T,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum PairReport<T, R> {
    /// The pair is SN.
    Vacuous,
    /// A component is not SN.
    HypothesisFails,
    Decomposed(Decomposition<T, R>),
    /// The pair loops but no disjunct was found: a counterexample.
    NoDisjunct,
    Inconclusive(String),
}

impl<T: std::fmt::Display, R: RuleTag> PairReport<T, R> {
    pub fn kind(&self) -> &'static str {
        match self {
            PairReport::Vacuous => "vacuous",
            PairReport::HypothesisFails => "hypothesis-fails",
            PairReport::Decomposed(_) => "decomposed",
            PairReport::NoDisjunct => "no-disjunct",
            PairReport::Inconclusive(_) => "inconclusive",
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            PairReport::Decomposed(d) => json!({
                "outcome": self.kind(),
                "rule": d.rule.tag(),
                "left": d.left.to_string(),
                "right": d.right.to_string(),
                "contractum": d.contractum.to_string(),
            }),
            PairReport::Inconclusive(why) => json!({"outcome": self.kind(), "reason": why}),
            _ => json!({"outcome": self.kind()}),
        }
    }
}

fn pair_search<C: Calculus>(
    calc: &C,
    a: &C::Term,
    b: &C::Term,
    pair: impl Fn(&C::Term, &C::Term) -> C::Term,
    root: impl Fn(&C::Term, &C::Term) -> Vec<(C::Rule, C::Term)>,
    budget: usize,
) -> PairReport<C::Term, C::Rule> {
    let ga = build_graph(calc, a, budget);
    let gb = build_graph(calc, b, budget);
    for g in [&ga, &gb] {
        match super::sn::verdict(calc, g) {
            SnVerdict::Sn { .. } => {}
            SnVerdict::CycleFound(_) => return PairReport::HypothesisFails,
            SnVerdict::BudgetExhausted { nodes } => {
                return PairReport::Inconclusive(format!("component graph cut off at {nodes} nodes"))
            }
        }
    }
    match sn_check(calc, &pair(a, b), budget) {
        SnVerdict::Sn { .. } => return PairReport::Vacuous,
        SnVerdict::BudgetExhausted { nodes } => {
            return PairReport::Inconclusive(format!("pair graph cut off at {nodes} nodes"))
        }
        SnVerdict::CycleFound(_) => {}
    }
    let mut cut_off = false;
    for u in ga.nodes() {
        for v in gb.nodes() {
            let (l, r) = (ga.term(u), gb.term(v));
            for (rule, c) in root(l, r) {
                match sn_check(calc, &c, budget) {
                    SnVerdict::CycleFound(_) => {
                        return PairReport::Decomposed(Decomposition {
                            rule,
                            left: l.clone(),
                            right: r.clone(),
                            contractum: c,
                        })
                    }
                    SnVerdict::BudgetExhausted { .. } => cut_off = true,
                    SnVerdict::Sn { .. } => {}
                }
            }
        }
    }
    if cut_off {
        PairReport::Inconclusive("a contractum graph was cut off".into())
    } else {
        PairReport::NoDisjunct
    }
}

/// The pair lemma for commands: if `t_l`, `t_r` are SN and `⟨t_l, t_r⟩` is
/// not, some reducts `t_l ▷* t'_l`, `t_r ▷* t'_r` form a root redex whose
/// contractum is not SN.
pub fn check_pair_lemma_lbar(
    calc: &Lbar,
    tl: &LbarTerm,
    tr: &LbarTerm,
    budget: usize,
) -> PairReport<LbarTerm, LbarRule> {
    let rules = calc.rules();
    pair_search(
        calc,
        tl,
        tr,
        |l, r| LbarTerm::command(l.clone(), r.clone()),
        |l, r| {
            let c = LbarTerm::command(l.clone(), r.clone());
            [LbarRule::Mu, LbarRule::MuTilde, LbarRule::Lam, LbarRule::Lbar]
                .into_iter()
                .filter(|&rule| rules.contains(rule))
                .filter_map(|rule| lbar_engine::contract_root(&c, rule).map(|t| (rule, t)))
                .collect()
        },
        budget,
    )
}

/// The same lemma for applications `(M N)`, with disjuncts for β, μ and μ′
/// at the root.
pub fn check_pair_lemma_lmu(calc: &Lmu, m: &LmuTerm, n: &LmuTerm, budget: usize) -> PairReport<LmuTerm, LmuRule> {
    let rules = calc.rules();
    pair_search(
        calc,
        m,
        n,
        |a, b| LmuTerm::app(a.clone(), b.clone()),
        |a, b| {
            let t = LmuTerm::app(a.clone(), b.clone());
            [LmuRule::Beta, LmuRule::Mu, LmuRule::MuPrime]
                .into_iter()
                .filter(|&rule| rules.contains(rule))
                .filter_map(|rule| lmu_engine::contract_root(&t, rule, None).map(|u| (rule, u)))
                .collect()
        },
        budget,
    )
}

/// Every node of `target` satisfying `shape` is reachable from one of
/// `sources`.
fn covered<C: Calculus>(
    calc: &C,
    target: &ReductionGraph<C>,
    shape: impl Fn(&C::Term) -> bool,
    sources: &[C::Term],
    budget: usize,
) -> LemmaOutcome {
    if !target.complete {
        return LemmaOutcome::Inconclusive(format!("graph cut off at {} nodes", target.node_count()));
    }
    let mut reach = HashSet::new();
    for s in sources {
        let g = build_graph(calc, s, budget);
        if !g.complete {
            return LemmaOutcome::Inconclusive(format!("graph of {s} cut off"));
        }
        reach.extend(g.nodes().map(|n| calc.key(g.term(n))));
    }
    for n in target.nodes() {
        let t = target.term(n);
        if shape(t) && !reach.contains(&calc.key(t)) {
            return LemmaOutcome::Fails(t.to_string());
        }
    }
    LemmaOutcome::Holds
}

fn nodes_where<C: Calculus>(g: &ReductionGraph<C>, p: impl Fn(&C::Term) -> bool) -> Vec<C::Term> {
    g.nodes().map(|n| g.term(n).clone()).filter(|t| p(t)).collect()
}

fn is_mu(t: &LmuTerm) -> bool {
    matches!(t, LmuTerm::Mu(..))
}

fn is_abs(t: &LmuTerm) -> bool {
    matches!(t, LmuTerm::Abs(..))
}

fn graphs_complete(gs: &[&ReductionGraph<Lmu>]) -> Result<(), LemmaOutcome> {
    for g in gs {
        if !g.complete {
            return Err(LemmaOutcome::Inconclusive(format!(
                "graph of {} cut off",
                g.term(g.root())
            )));
        }
    }
    Ok(())
}

/// Root contracta `(u N)` for each `u` in `heads` and `(M w)` for each `w`
/// in `args`, under `rule_head` and `rule_arg` respectively.
fn root_contracta(
    heads: &[LmuTerm],
    n: &LmuTerm,
    rule_head: LmuRule,
    m: &LmuTerm,
    args: &[LmuTerm],
    rule_arg: Option<LmuRule>,
) -> Vec<LmuTerm> {
    let mut out: Vec<LmuTerm> = heads
        .iter()
        .filter_map(|u| lmu_engine::contract_root(&LmuTerm::app(u.clone(), n.clone()), rule_head, None))
        .collect();
    if let Some(rule) = rule_arg {
        out.extend(
            args.iter()
                .filter_map(|w| lmu_engine::contract_root(&LmuTerm::app(m.clone(), w.clone()), rule, None)),
        );
    }
    out
}

/// If `(M N) ▷* μα P` under `{μ, μ′}` then `M ▷* μα M₁` with
/// `M₁[α=ᵣN] ▷* P`, or `N ▷* μα N₁` with `N₁[α=ₗM] ▷* P`.
pub fn check_app_to_mu(m: &LmuTerm, n: &LmuTerm, budget: usize) -> LemmaOutcome {
    let calc = Lmu::new(LmuRule::mu_mu_prime());
    let app = LmuTerm::app(m.clone(), n.clone());
    let (g, gm, gn) = (build_graph(&calc, &app, budget), build_graph(&calc, m, budget), build_graph(&calc, n, budget));
    if let Err(o) = graphs_complete(&[&g, &gm, &gn]) {
        return o;
    }
    let sources = root_contracta(
        &nodes_where(&gm, is_mu),
        n,
        LmuRule::Mu,
        m,
        &nodes_where(&gn, is_mu),
        Some(LmuRule::MuPrime),
    );
    covered(&calc, &g, is_mu, &sources, budget)
}

/// Under `{β, μ, μ′}`: (1) if `(M N) ▷* λx P` then `M ▷* λy M₁` with
/// `M₁[y:=N] ▷* λx P`; (2) if `(M N) ▷* μα P`, the same with a β, μ or μ′
/// ancestor.
pub fn check_app_to_binder(m: &LmuTerm, n: &LmuTerm, budget: usize) -> (LemmaOutcome, LemmaOutcome) {
    let calc = Lmu::new(LmuRule::beta_mu_mu_prime());
    let app = LmuTerm::app(m.clone(), n.clone());
    let (g, gm, gn) = (build_graph(&calc, &app, budget), build_graph(&calc, m, budget), build_graph(&calc, n, budget));
    if let Err(o) = graphs_complete(&[&g, &gm, &gn]) {
        return (o.clone(), o);
    }
    let betas = root_contracta(&nodes_where(&gm, is_abs), n, LmuRule::Beta, m, &[], None);
    let one = covered(&calc, &g, is_abs, &betas, budget);
    let mut sources = betas;
    sources.extend(root_contracta(
        &nodes_where(&gm, is_mu),
        n,
        LmuRule::Mu,
        m,
        &nodes_where(&gn, is_mu),
        Some(LmuRule::MuPrime),
    ));
    let two = covered(&calc, &g, is_mu, &sources, budget);
    (one, two)
}

/// Lifting a root binder back through a substitution: if `M[σ] ▷* μα P`
/// (resp. `λx P`) then `M ▷* μα Q` (resp. `λx Q`) with `Q[σ] ▷* P`.
/// `shape` picks the binder, `rules` the reduction.
pub fn check_lift(
    m: &LmuTerm,
    sigma: &LmuSubst,
    rules: RuleSet<LmuRule>,
    shape: fn(&LmuTerm) -> bool,
    budget: usize,
) -> LemmaOutcome {
    let calc = Lmu::new(rules);
    let gs = build_graph(&calc, &sigma.apply(m), budget);
    let gm = build_graph(&calc, m, budget);
    if let Err(o) = graphs_complete(&[&gs, &gm]) {
        return o;
    }
    // (μα Q)[σ] is μα' Q[σ] up to α, so lifting the whole binder suffices.
    let sources: Vec<LmuTerm> = nodes_where(&gm, shape).iter().map(|q| sigma.apply(q)).collect();
    covered(&calc, &gs, shape, &sources, budget)
}

/// The root-μ lifting under `{μ, μ′}`; `sigma` should only carry
/// μ-substitutions.
pub fn check_lift_mu(m: &LmuTerm, sigma: &LmuSubst, budget: usize) -> LemmaOutcome {
    check_lift(m, sigma, LmuRule::mu_mu_prime(), is_mu, budget)
}

/// Both liftings under `{β, μ, μ′}`, for address substitutions.
pub fn check_lift_both(m: &LmuTerm, sigma: &LmuSubst, budget: usize) -> (LemmaOutcome, LemmaOutcome) {
    let rules = LmuRule::beta_mu_mu_prime();
    (
        check_lift(m, sigma, rules, is_abs, budget),
        check_lift(m, sigma, rules, is_mu, budget),
    )
}

/// `σ = [x:=N]` under `{β, μ, μ′}`: if `M[σ] ▷* λy P` then `M ▷* λy P₁` with
/// `P₁[σ] ▷* P`, or `M ▷* (x Q⃗)` with `(N Q⃗[σ]) ▷* λy P`.
pub fn check_var_subst_lift(m: &LmuTerm, x: &Name, n: &LmuTerm, budget: usize) -> LemmaOutcome {
    let calc = Lmu::new(LmuRule::beta_mu_mu_prime());
    let sigma = LmuSubst::new().with_var(x, n.clone());
    let gs = build_graph(&calc, &sigma.apply(m), budget);
    let gm = build_graph(&calc, m, budget);
    if let Err(o) = graphs_complete(&[&gs, &gm]) {
        return o;
    }
    if !super::sn::verdict(&calc, &gm).is_sn() {
        return LemmaOutcome::Vacuous;
    }
    let mut sources: Vec<LmuTerm> = nodes_where(&gm, is_abs).iter().map(|q| sigma.apply(q)).collect();
    for q in gm.nodes().map(|i| gm.term(i)) {
        let (head, args) = q.spine();
        if *head == LmuTerm::Var(x.clone()) {
            sources.push(LmuTerm::apps(n.clone(), args.into_iter().map(|a| sigma.apply(a))));
        }
    }
    covered(&calc, &gs, is_abs, &sources, budget)
}
