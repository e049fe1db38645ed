//! Reduction rules of the λ̄μμ̃-calculus.

use std::collections::HashSet;
use std::fmt;

use serde_json::Value;
use thiserror::Error;

use super::subst::{subst_l, subst_r, LbarSubst};
use super::term::{LbarKey, LbarTerm};
use crate::names::{FreshSupply, Name};
use crate::rewrite::{
    self, BudgetExhausted, Calculus, Redex, ReduceError, RuleSet, RuleTag, Sequence, Strategy,
};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LbarRule {
    /// `⟨λx t_l , t'_l.t_r⟩ ▷ ⟨t'_l , μx⟨t_l , t_r⟩⟩`
    Lam,
    /// `⟨t'_r.t_l , λα t_r⟩ ▷ ⟨μα⟨t_l , t_r⟩ , t'_r⟩`
    Lbar,
    /// `⟨μα c , t_r⟩ ▷ c[α := t_r]`
    Mu,
    /// `⟨t_l , μx c⟩ ▷ c[x := t_l]`
    MuTilde,
    /// `μα⟨t_l , α⟩ ▷ t_l` when `α ∉ FV(t_l)`
    SL,
    /// `μx⟨x , t_r⟩ ▷ t_r` when `x ∉ FV(t_r)`
    SR,
}

pub type LbarRedex = Redex<LbarRule>;
pub type LbarSequence = Sequence<LbarTerm, LbarRule>;

impl LbarRule {
    pub fn is_logical(self) -> bool {
        !self.is_simplification()
    }

    pub fn is_simplification(self) -> bool {
        matches!(self, LbarRule::SL | LbarRule::SR)
    }

    pub fn logical() -> RuleSet<LbarRule> {
        RuleSet::of(&[LbarRule::Lam, LbarRule::Lbar, LbarRule::Mu, LbarRule::MuTilde])
    }

    pub fn simplification() -> RuleSet<LbarRule> {
        RuleSet::of(&[LbarRule::SL, LbarRule::SR])
    }

    pub fn mu_mutilde() -> RuleSet<LbarRule> {
        RuleSet::of(&[LbarRule::Mu, LbarRule::MuTilde])
    }
}

impl RuleTag for LbarRule {
    const ALL: &'static [Self] = &[
        LbarRule::Lam,
        LbarRule::Lbar,
        LbarRule::Mu,
        LbarRule::MuTilde,
        LbarRule::SL,
        LbarRule::SR,
    ];

    fn tag(self) -> &'static str {
        match self {
            LbarRule::Lam => "lam",
            LbarRule::Lbar => "lbar",
            LbarRule::Mu => "mu",
            LbarRule::MuTilde => "mutilde",
            LbarRule::SL => "s_l",
            LbarRule::SR => "s_r",
        }
    }

    fn from_tag(s: &str) -> Option<Self> {
        Self::ALL.iter().copied().find(|r| r.tag() == s)
    }
}

impl fmt::Display for LbarRule {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.tag())
    }
}

/// Does `rule` match at the root of `t`?
pub fn matches_at(t: &LbarTerm, rule: LbarRule) -> bool {
    match (rule, t) {
        (LbarRule::Lam, LbarTerm::Command(l, r)) => {
            matches!(**l, LbarTerm::LAbs(..)) && matches!(**r, LbarTerm::LConsR(..))
        }
        (LbarRule::Lbar, LbarTerm::Command(l, r)) => {
            matches!(**l, LbarTerm::RConsL(..)) && matches!(**r, LbarTerm::RAbs(..))
        }
        (LbarRule::Mu, LbarTerm::Command(l, _)) => matches!(**l, LbarTerm::LMu(..)),
        (LbarRule::MuTilde, LbarTerm::Command(_, r)) => matches!(**r, LbarTerm::RMu(..)),
        (LbarRule::SL, LbarTerm::LMu(a, _, c)) => match &**c {
            LbarTerm::Command(tl, tr) => **tr == LbarTerm::RVar(a.clone()) && !tl.has_free_r(a),
            _ => false,
        },
        (LbarRule::SR, LbarTerm::RMu(x, _, c)) => match &**c {
            LbarTerm::Command(tl, tr) => **tl == LbarTerm::LVar(x.clone()) && !tr.has_free_l(x),
            _ => false,
        },
        _ => false,
    }
}

fn names_of(ts: &[&LbarTerm]) -> HashSet<Name> {
    let mut out = HashSet::new();
    for t in ts {
        t.all_names(&mut out);
    }
    out
}

/// Contracts a redex sitting at the root of `t`.
pub fn contract_root(t: &LbarTerm, rule: LbarRule) -> Option<LbarTerm> {
    if !matches_at(t, rule) {
        return None;
    }
    Some(match (rule, t) {
        (LbarRule::Lam, LbarTerm::Command(l, r)) => {
            let (LbarTerm::LAbs(x, ty, body), LbarTerm::LConsR(arg, rest)) = (&**l, &**r) else {
                unreachable!()
            };
            // μx now scopes over t_r as well.
            let (x, body) = if rest.has_free_l(x) {
                let x2 = FreshSupply::new(names_of(&[body, rest])).fresh(x);
                let b = LbarSubst::l(x, LbarTerm::LVar(x2.clone())).apply(body);
                (x2, b)
            } else {
                (x.clone(), (**body).clone())
            };
            let inner = LbarTerm::command(body, (**rest).clone());
            LbarTerm::command((**arg).clone(), LbarTerm::RMu(x, ty.clone(), Box::new(inner)))
        }
        (LbarRule::Lbar, LbarTerm::Command(l, r)) => {
            let (LbarTerm::RConsL(arg, rest), LbarTerm::RAbs(a, ty, body)) = (&**l, &**r) else {
                unreachable!()
            };
            let (a, body) = if rest.has_free_r(a) {
                let a2 = FreshSupply::new(names_of(&[body, rest])).fresh(a);
                let b = LbarSubst::r(a, LbarTerm::RVar(a2.clone())).apply(body);
                (a2, b)
            } else {
                (a.clone(), (**body).clone())
            };
            let inner = LbarTerm::command((**rest).clone(), body);
            LbarTerm::command(LbarTerm::LMu(a, ty.clone(), Box::new(inner)), (**arg).clone())
        }
        (LbarRule::Mu, LbarTerm::Command(l, r)) => {
            let LbarTerm::LMu(a, _, c) = &**l else { unreachable!() };
            subst_r(c, a, r)
        }
        (LbarRule::MuTilde, LbarTerm::Command(l, r)) => {
            let LbarTerm::RMu(x, _, c) = &**r else { unreachable!() };
            subst_l(c, x, l)
        }
        (LbarRule::SL, LbarTerm::LMu(_, _, c)) => {
            let LbarTerm::Command(tl, _) = &**c else { unreachable!() };
            (**tl).clone()
        }
        (LbarRule::SR, LbarTerm::RMu(_, _, c)) => {
            let LbarTerm::Command(_, tr) = &**c else { unreachable!() };
            (**tr).clone()
        }
        _ => unreachable!(),
    })
}

/// All redexes of the enabled rules, preorder, rules in declaration order.
pub fn find_redexes(t: &LbarTerm, rules: RuleSet<LbarRule>) -> Vec<LbarRedex> {
    fn go(t: &LbarTerm, rules: RuleSet<LbarRule>, path: &mut Vec<usize>, out: &mut Vec<LbarRedex>) {
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

pub fn contract(t: &LbarTerm, r: &LbarRedex) -> Result<LbarTerm, ReduceError> {
    let sub = t
        .subterm(&r.position)
        .ok_or_else(|| ReduceError::BadPosition(r.position.clone()))?;
    let new = contract_root(sub, r.rule).ok_or_else(|| ReduceError::NoMatch {
        rule: r.rule.tag().to_string(),
        position: r.position.clone(),
    })?;
    Ok(t.replace_at(&r.position, new).expect("position exists"))
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum L0Error {
    #[error("only mu and mutilde redexes have a linear variant, not {0}")]
    WrongRule(LbarRule),
    #[error(transparent)]
    Reduce(#[from] ReduceError),
}

/// Is this μ/μ̃ redex a μ₀/μ̃₀ redex (bound variable free at most once)?
pub fn is_l0(t: &LbarTerm, r: &LbarRedex) -> Result<bool, L0Error> {
    if !matches!(r.rule, LbarRule::Mu | LbarRule::MuTilde) {
        return Err(L0Error::WrongRule(r.rule));
    }
    let sub = t
        .subterm(&r.position)
        .ok_or_else(|| ReduceError::BadPosition(r.position.clone()))?;
    if !matches_at(sub, r.rule) {
        return Err(ReduceError::NoMatch {
            rule: r.rule.tag().to_string(),
            position: r.position.clone(),
        }
        .into());
    }
    let LbarTerm::Command(l, rt) = sub else { unreachable!() };
    Ok(match (r.rule, &**l, &**rt) {
        (LbarRule::Mu, LbarTerm::LMu(a, _, c), _) => c.count_free_r(a) <= 1,
        (LbarRule::MuTilde, _, LbarTerm::RMu(x, _, c)) => c.count_free_l(x) <= 1,
        _ => unreachable!(),
    })
}

/// The λ̄μμ̃-calculus restricted to a rule set.
#[derive(Debug, Clone, Copy)]
pub struct Lbar {
    pub rules: RuleSet<LbarRule>,
}

impl Lbar {
    pub fn new(rules: RuleSet<LbarRule>) -> Self {
        Lbar { rules }
    }
}

impl Calculus for Lbar {
    type Term = LbarTerm;
    type Key = LbarKey;
    type Rule = LbarRule;

    fn rules(&self) -> RuleSet<LbarRule> {
        self.rules
    }

    fn redexes(&self, t: &LbarTerm) -> Vec<LbarRedex> {
        find_redexes(t, self.rules)
    }

    fn contract(&self, t: &LbarTerm, r: &LbarRedex) -> Result<LbarTerm, ReduceError> {
        contract(t, r)
    }

    fn key(&self, t: &LbarTerm) -> LbarKey {
        t.key()
    }

    fn cxty(&self, t: &LbarTerm) -> usize {
        t.cxty()
    }

    fn to_json(&self, t: &LbarTerm) -> Value {
        t.to_json()
    }
}

pub fn normalize(
    t: &LbarTerm,
    rules: RuleSet<LbarRule>,
    strategy: &Strategy,
    max_steps: usize,
) -> Result<(LbarTerm, LbarSequence), BudgetExhausted<LbarTerm, LbarRule>> {
    rewrite::normalize(&Lbar::new(rules), t, strategy, max_steps)
}
