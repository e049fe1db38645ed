//! Reduction rules of the symmetric λμ-calculus.

use std::collections::HashSet;
use std::fmt;

use serde_json::Value;

use super::subst::{rename_mu, subst_beta, subst_mu_l, subst_mu_r};
use super::term::{LmuKey, LmuTerm};
use crate::names::{FreshSupply, Name};
use crate::rewrite::{self, BudgetExhausted, Calculus, Redex, ReduceError, RuleSet, RuleTag, Sequence, Strategy};
use crate::typing::context::LmuContext;
use crate::typing::lmu::lmu_type_of;
use crate::typing::LmuType;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LmuRule {
    /// `(λx M N) ▷ M[x := N]`
    Beta,
    /// `(μα M N) ▷ μα M[α =ᵣ N]`
    Mu,
    /// `(N μα M) ▷ μα M[α =ₗ N]`
    MuPrime,
    /// `(α μβ M) ▷ M[β := α]`
    Rho,
    /// `μα (α M) ▷ M` when `α ∉ FV(M)`
    Theta,
}

pub type LmuRedex = Redex<LmuRule>;
pub type LmuSequence = Sequence<LmuTerm, LmuRule>;

impl LmuRule {
    pub fn mu_mu_prime() -> RuleSet<LmuRule> {
        RuleSet::of(&[LmuRule::Mu, LmuRule::MuPrime])
    }

    pub fn beta_mu_mu_prime() -> RuleSet<LmuRule> {
        RuleSet::of(&[LmuRule::Beta, LmuRule::Mu, LmuRule::MuPrime])
    }
}

impl RuleTag for LmuRule {
    const ALL: &'static [Self] = &[LmuRule::Beta, LmuRule::Mu, LmuRule::MuPrime, LmuRule::Rho, LmuRule::Theta];

    fn tag(self) -> &'static str {
        match self {
            LmuRule::Beta => "beta",
            LmuRule::Mu => "mu",
            LmuRule::MuPrime => "mu_prime",
            LmuRule::Rho => "rho",
            LmuRule::Theta => "theta",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        if s == "mu'" {
            return Some(LmuRule::MuPrime);
        }
        Self::ALL.iter().copied().find(|r| r.tag() == s)
    }
}

impl fmt::Display for LmuRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

pub fn matches_at(t: &LmuTerm, rule: LmuRule) -> bool {
    match (rule, t) {
        (LmuRule::Beta, LmuTerm::App(f, _)) => matches!(**f, LmuTerm::Abs(..)),
        (LmuRule::Mu, LmuTerm::App(f, _)) => matches!(**f, LmuTerm::Mu(..)),
        (LmuRule::MuPrime, LmuTerm::App(_, a)) => matches!(**a, LmuTerm::Mu(..)),
        (LmuRule::Rho, LmuTerm::Named(_, b)) => matches!(**b, LmuTerm::Mu(..)),
        (LmuRule::Theta, LmuTerm::Mu(a, _, b)) => match &**b {
            LmuTerm::Named(a2, m) => a2 == a && !m.has_free_r(a),
            _ => false,
        },
        _ => false,
    }
}

/// Renames the binder of `μα M` away from the free μ-variables of `other`.
fn freshen_mu(a: &Name, body: &LmuTerm, other: &LmuTerm) -> (Name, LmuTerm) {
    if !other.has_free_r(a) {
        return (a.clone(), body.clone());
    }
    let mut names = HashSet::new();
    body.all_names(&mut names);
    other.all_names(&mut names);
    let a2 = FreshSupply::new(names).fresh(a);
    let b = rename_mu(body, a, &a2);
    (a2, b)
}

/// Contracts a redex at the root of `t`. `ctx` types the free variables at
/// that point and is only used to update the μ′ annotation.
pub fn contract_root(t: &LmuTerm, rule: LmuRule, ctx: Option<&LmuContext>) -> Option<LmuTerm> {
    if !matches_at(t, rule) {
        return None;
    }
    Some(match (rule, t) {
        (LmuRule::Beta, LmuTerm::App(f, n)) => {
            let LmuTerm::Abs(x, _, m) = &**f else { unreachable!() };
            subst_beta(m, x, n)
        }
        (LmuRule::Mu, LmuTerm::App(f, n)) => {
            let LmuTerm::Mu(a, ty, m) = &**f else { unreachable!() };
            let (a, m) = freshen_mu(a, m, n);
            // α : ¬(C → B) becomes α : ¬B.
            let ty = match ty {
                Some(LmuType::Arrow(_, b)) => Some((**b).clone()),
                other => other.clone(),
            };
            LmuTerm::Mu(a.clone(), ty, Box::new(subst_mu_r(&m, &a, n)))
        }
        (LmuRule::MuPrime, LmuTerm::App(n, arg)) => {
            let LmuTerm::Mu(a, ty, m) = &**arg else { unreachable!() };
            let (a, m) = freshen_mu(a, m, n);
            // α : ¬T becomes α : ¬B where N : T → B.
            let ty = match (ty, ctx.and_then(|c| lmu_type_of(n, c).ok())) {
                (Some(t0), Some(LmuType::Arrow(dom, cod))) if *dom == *t0 => Some(*cod),
                (other, _) => other.clone(),
            };
            LmuTerm::Mu(a.clone(), ty, Box::new(subst_mu_l(&m, &a, n)))
        }
        (LmuRule::Rho, LmuTerm::Named(a, b)) => {
            let LmuTerm::Mu(beta, _, m) = &**b else { unreachable!() };
            rename_mu(m, beta, a)
        }
        (LmuRule::Theta, LmuTerm::Mu(_, _, b)) => {
            let LmuTerm::Named(_, m) = &**b else { unreachable!() };
            (**m).clone()
        }
        _ => unreachable!(),
    })
}

/// The ambient context extended with the annotated binders above `path`.
/// Unannotated binders hide outer declarations of the same name.
fn context_at(t: &LmuTerm, path: &[usize], ambient: &LmuContext) -> LmuContext {
    let mut ctx = ambient.clone();
    let mut cur = t;
    for &i in path {
        match cur {
            LmuTerm::Abs(x, ty, _) => match ty {
                Some(a) => {
                    ctx.vars.insert(x.clone(), a.clone());
                }
                None => {
                    ctx.vars.remove(x);
                }
            },
            LmuTerm::Mu(a, ty, _) => match ty {
                Some(at) => {
                    ctx.covars.insert(a.clone(), at.clone());
                }
                None => {
                    ctx.covars.remove(a);
                }
            },
            _ => {}
        }
        match cur.children().get(i) {
            Some(c) => cur = c,
            None => break,
        }
    }
    ctx
}

pub fn find_redexes(t: &LmuTerm, rules: RuleSet<LmuRule>) -> Vec<LmuRedex> {
    fn go(t: &LmuTerm, rules: RuleSet<LmuRule>, path: &mut Vec<usize>, out: &mut Vec<LmuRedex>) {
        for r in rules.iter() {
            if matches_at(t, r) {
                out.push(Redex::new(path.clone(), r));
            }
        }
        for (i, c) in t.children().into_iter().enumerate() {
            path.push(i);
            go(c, rules, path, out);
            path.pop();
        }
    }
    let mut out = Vec::new();
    go(t, rules, &mut Vec::new(), &mut out);
    out
}

/// Contracts `r` in `t`; `ctx` types the free variables of `t` if known.
pub fn contract_in(t: &LmuTerm, r: &LmuRedex, ctx: Option<&LmuContext>) -> Result<LmuTerm, ReduceError> {
    let sub = t
        .subterm(&r.position)
        .ok_or_else(|| ReduceError::BadPosition(r.position.clone()))?;
    let local = if r.rule == LmuRule::MuPrime {
        let empty = LmuContext::new();
        Some(context_at(t, &r.position, ctx.unwrap_or(&empty)))
    } else {
        None
    };
    let new = contract_root(sub, r.rule, local.as_ref()).ok_or_else(|| ReduceError::NoMatch {
        rule: r.rule.tag().to_string(),
        position: r.position.clone(),
    })?;
    Ok(t.replace_at(&r.position, new).expect("position exists"))
}

pub fn contract(t: &LmuTerm, r: &LmuRedex) -> Result<LmuTerm, ReduceError> {
    contract_in(t, r, None)
}

/// The λμ-calculus restricted to a rule set, optionally with the context
/// that types free variables (used for μ′ annotation updates).
#[derive(Debug, Clone)]
pub struct Lmu {
    pub rules: RuleSet<LmuRule>,
    pub context: Option<LmuContext>,
}

impl Lmu {
    pub fn new(rules: RuleSet<LmuRule>) -> Self {
        Lmu { rules, context: None }
    }

    pub fn with_context(mut self, ctx: LmuContext) -> Self {
        self.context = Some(ctx);
        self
    }
}

impl Calculus for Lmu {
    type Term = LmuTerm;
    type Key = LmuKey;
    type Rule = LmuRule;

    fn rules(&self) -> RuleSet<LmuRule> {
        self.rules
    }

    fn redexes(&self, t: &LmuTerm) -> Vec<LmuRedex> {
        find_redexes(t, self.rules)
    }

    fn contract(&self, t: &LmuTerm, r: &LmuRedex) -> Result<LmuTerm, ReduceError> {
        contract_in(t, r, self.context.as_ref())
    }

    fn key(&self, t: &LmuTerm) -> LmuKey {
        t.key()
    }

    fn cxty(&self, t: &LmuTerm) -> usize {
        t.cxty()
    }

    fn to_json(&self, t: &LmuTerm) -> Value {
        t.to_json()
    }
}

pub fn normalize(
    t: &LmuTerm,
    rules: RuleSet<LmuRule>,
    strategy: &Strategy,
    max_steps: usize,
) -> Result<(LmuTerm, LmuSequence), BudgetExhausted<LmuTerm, LmuRule>> {
    rewrite::normalize(&Lmu::new(rules), t, strategy, max_steps)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmu::parse_lmu;

    fn p(s: &str) -> LmuTerm {
        parse_lmu(s).unwrap()
    }

    #[test]
    fn mu_and_mu_prime_at_root() {
        let rs = find_redexes(&p("(mu @a. x mu @b. y)"), LmuRule::mu_mu_prime());
        assert_eq!(rs, vec![Redex::new(vec![], LmuRule::Mu), Redex::new(vec![], LmuRule::MuPrime)]);
        // Neither names @a or @b, so both reduce to the vacuous μ over x or y.
        let t = p("(mu @a. x mu @b. y)");
        assert_eq!(contract(&t, &rs[0]).unwrap(), p("mu @a. x"));
        assert_eq!(contract(&t, &rs[1]).unwrap(), p("mu @b. y"));
    }

    #[test]
    fn theta_side_condition() {
        let theta = RuleSet::of(&[LmuRule::Theta]);
        assert_eq!(find_redexes(&p("mu @a. [@a] x"), theta).len(), 1);
        assert!(find_redexes(&p("mu @a. [@a] (x mu @a2. [@a] y)"), theta).is_empty());
    }

    #[test]
    fn contractions() {
        let root = |r| Redex::new(vec![], r);
        assert_eq!(contract(&p("(\\x. x y)"), &root(LmuRule::Beta)).unwrap(), p("y"));
        assert_eq!(contract(&p("(mu @a. [@a] x y)"), &root(LmuRule::Mu)).unwrap(), p("mu @a. [@a] (x y)"));
        assert_eq!(
            contract(&p("(y mu @a. [@a] x)"), &root(LmuRule::MuPrime)).unwrap(),
            p("mu @a. [@a] (y x)")
        );
        assert_eq!(contract(&p("[@a] mu @b. [@b] x"), &root(LmuRule::Rho)).unwrap(), p("[@a] x"));
        assert!(contract(&p("x"), &root(LmuRule::Beta)).is_err());
    }

    #[test]
    fn mu_binder_is_renamed_away_from_argument() {
        let out = contract(&p("(mu @a. [@a] x [@a] y)"), &Redex::new(vec![], LmuRule::Mu)).unwrap();
        let LmuTerm::Mu(b, _, _) = &out else { panic!() };
        assert_ne!(b.as_str(), "a");
        assert!(out.free_vars().rvars.contains(&Name::new("a")), "{out}");
    }

    #[test]
    fn annotations_follow_the_type_change() {
        let ctx = LmuContext::new()
            .with_var("x", LmuType::atom("A"))
            .with_var("y", LmuType::atom("A"));
        let a = LmuType::atom("A");
        let aa = LmuType::arrow(a.clone(), a.clone());
        let m = LmuTerm::Mu(Name::new("a"), Some(aa.clone()), Box::new(p("[@a] \\z:A. z")));
        let t = LmuTerm::app(m, p("x"));
        let calc = Lmu::new(LmuRule::mu_mu_prime()).with_context(ctx.clone());
        let out = calc.contract(&t, &Redex::new(vec![], LmuRule::Mu)).unwrap();
        assert_eq!(lmu_type_of(&out, &ctx).unwrap(), a);

        let m = LmuTerm::Mu(Name::new("a"), Some(a.clone()), Box::new(p("[@a] y")));
        let t = LmuTerm::app(p("\\w:A. w"), m);
        let out = calc.contract(&t, &Redex::new(vec![], LmuRule::MuPrime)).unwrap();
        assert_eq!(lmu_type_of(&out, &ctx).unwrap(), a);
    }

    #[test]
    fn normalization() {
        let t = p("(\\z. x mu @b. y)");
        let rules = LmuRule::beta_mu_mu_prime();
        let (nf, _) = normalize(&t, rules, &Strategy::Prefer("beta".into()), 10).unwrap();
        assert_eq!(nf, p("x"));
        let (nf, _) = normalize(&t, rules, &Strategy::Prefer("mu_prime".into()), 10).unwrap();
        assert_eq!(nf, p("mu @b. y"));
        let omega = p("(\\x. (x x) \\x. (x x))");
        let err = normalize(&omega, RuleSet::of(&[LmuRule::Beta]), &Strategy::LeftmostOutermost, 5).unwrap_err();
        assert_eq!(err.partial.len(), 5);
        assert!(err.partial.steps.iter().all(|s| s.to.alpha_eq(&omega)));
        let (nf, seq) = normalize(&p("mu @a. [@a] x"), RuleSet::of(&[LmuRule::Theta]), &Strategy::LeftmostOutermost, 5).unwrap();
        assert_eq!((nf, seq.len()), (p("x"), 1));
    }

    #[test]
    fn mu_prime_alias() {
        assert_eq!(LmuRule::from_tag("mu'"), Some(LmuRule::MuPrime));
        assert_eq!(RuleSet::<LmuRule>::parse("beta,mu'").unwrap().tags(), ["beta", "mu_prime"]);
    }
}
