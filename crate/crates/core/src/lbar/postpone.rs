//! Moving simplification steps after logical steps.
//!
//! [`postpone_once`] rewrites an adjacent pair `u ▷_s v ▷_l w` into either
//! `u ▷_l t ▷_s* w` or `u ▷_{l₀} t ▷_l w`; [`postpone`] applies it to the
//! rightmost such pair until every logical step precedes every s-step.

use std::collections::{HashSet, VecDeque};

use thiserror::Error;

use super::engine::{contract, find_redexes, is_l0, LbarRedex, LbarRule, LbarSequence};
use super::term::{LbarKey, LbarTerm};
use crate::rewrite::{replay, Redex, ReduceError, Step};

/// How a pair was rearranged.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Branch {
    /// The redexes were disjoint and simply swapped.
    Commute,
    /// The logical redex lay inside the s-contractum and was traced back.
    Inside,
    /// Found by search: one logical step, then s-steps.
    LThenS,
    /// Found by search: a μ₀/μ̃₀ step, then one logical step.
    L0ThenL,
}

impl Branch {
    pub fn describe(self) -> &'static str {
        match self {
            Branch::Commute => "commute",
            Branch::Inside => "inside",
            Branch::LThenS => "l-then-s",
            Branch::L0ThenL => "l0-then-l",
        }
    }
}

#[derive(Debug, Clone)]
pub struct Postponed {
    pub sequence: LbarSequence,
    pub branch: Branch,
    /// For [`Branch::L0ThenL`], the linear redex fired first.
    pub chosen_l0: Option<LbarRedex>,
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum PostponeError {
    #[error("the first step must be s_l or s_r and the second a logical rule")]
    WrongKinds,
    #[error("the steps do not chain")]
    NotChained,
    #[error(transparent)]
    Reduce(#[from] ReduceError),
    #[error("no rearrangement found for the pair starting at {0}")]
    NoRearrangement(String),
    #[error("postponement exceeded its internal budget of {0} rewrites")]
    Budget(usize),
}

fn is_prefix(p: &[usize], q: &[usize]) -> bool {
    p.len() <= q.len() && q[..p.len()] == *p
}

fn s_rules() -> crate::rewrite::RuleSet<LbarRule> {
    LbarRule::simplification()
}

/// s-only paths from `t` to a term α-equal to `goal`, breadth first.
fn s_path(t: &LbarTerm, goal: &LbarKey) -> Option<Vec<LbarRedex>> {
    let mut seen = HashSet::new();
    let mut queue = VecDeque::new();
    seen.insert(t.key());
    queue.push_back((t.clone(), Vec::new()));
    while let Some((cur, path)) = queue.pop_front() {
        if cur.key() == *goal {
            return Some(path);
        }
        for r in find_redexes(&cur, s_rules()) {
            let next = contract(&cur, &r).expect("found redexes contract");
            if seen.insert(next.key()) {
                let mut p = path.clone();
                p.push(r);
                queue.push_back((next, p));
            }
        }
    }
    None
}

fn ends_at(u: &LbarTerm, redexes: &[LbarRedex], goal: &LbarKey) -> Option<LbarSequence> {
    let seq = replay(&super::Lbar::new(crate::rewrite::RuleSet::all()), u, redexes).ok()?;
    (seq.last().key() == *goal).then_some(seq)
}

/// Rearranges `u ▷_s v ▷_l w`.
pub fn postpone_once(
    u: &LbarTerm,
    s_step: &Step<LbarTerm, LbarRule>,
    l_step: &Step<LbarTerm, LbarRule>,
) -> Result<Postponed, PostponeError> {
    if !s_step.redex.rule.is_simplification() || !l_step.redex.rule.is_logical() {
        return Err(PostponeError::WrongKinds);
    }
    if s_step.from.key() != u.key() || s_step.to.key() != l_step.from.key() {
        return Err(PostponeError::NotChained);
    }
    let v = contract(u, &s_step.redex)?;
    let w = contract(&v, &l_step.redex)?;
    let goal = w.key();
    let p = &s_step.redex.position;
    let q = &l_step.redex.position;
    let done = |seq, branch| Postponed {
        sequence: seq,
        branch,
        chosen_l0: None,
    };

    if !is_prefix(p, q) && !is_prefix(q, p) {
        let rs = [l_step.redex.clone(), s_step.redex.clone()];
        if let Some(seq) = ends_at(u, &rs, &goal) {
            return Ok(done(seq, Branch::Commute));
        }
    }
    if is_prefix(p, q) {
        // The contractum of s_l is u_p's child [0, 0]; of s_r, [0, 1].
        let mid = match s_step.redex.rule {
            LbarRule::SL => [0, 0],
            _ => [0, 1],
        };
        let mut traced = p.clone();
        traced.extend(mid);
        traced.extend_from_slice(&q[p.len()..]);
        let rs = [Redex::new(traced, l_step.redex.rule), s_step.redex.clone()];
        if let Some(seq) = ends_at(u, &rs, &goal) {
            return Ok(done(seq, Branch::Inside));
        }
    }
    let logical = LbarRule::logical();
    for r in find_redexes(u, logical) {
        let t = contract(u, &r)?;
        if let Some(tail) = s_path(&t, &goal) {
            let mut rs = vec![r];
            rs.extend(tail);
            let seq = ends_at(u, &rs, &goal).expect("search path replays");
            return Ok(done(seq, Branch::LThenS));
        }
    }
    for r0 in find_redexes(u, logical) {
        if !matches!(r0.rule, LbarRule::Mu | LbarRule::MuTilde) || !is_l0(u, &r0).unwrap_or(false) {
            continue;
        }
        let t = contract(u, &r0)?;
        for r1 in find_redexes(&t, logical) {
            let rs = [r0.clone(), r1];
            if let Some(seq) = ends_at(u, &rs, &goal) {
                return Ok(Postponed {
                    sequence: seq,
                    branch: Branch::L0ThenL,
                    chosen_l0: Some(r0),
                });
            }
        }
    }
    Err(PostponeError::NoRearrangement(u.to_string()))
}

/// Is every logical step before every s-step?
pub fn is_partitioned(seq: &LbarSequence) -> bool {
    let first_s = seq
        .steps
        .iter()
        .position(|s| s.redex.rule.is_simplification())
        .unwrap_or(seq.len());
    seq.steps[first_s..].iter().all(|s| s.redex.rule.is_simplification())
}

const REWRITE_BUDGET: usize = 100_000;

/// Reorders `seq` into logical steps followed by s-steps, with the same
/// start and an α-equal end.
pub fn postpone(seq: &LbarSequence) -> Result<LbarSequence, PostponeError> {
    let calc = super::Lbar::new(crate::rewrite::RuleSet::all());
    let mut redexes: Vec<LbarRedex> = seq.redexes();
    let mut cur = seq.clone();
    for _ in 0..REWRITE_BUDGET {
        let pair = (0..cur.len().saturating_sub(1)).rev().find(|&i| {
            cur.steps[i].redex.rule.is_simplification() && cur.steps[i + 1].redex.rule.is_logical()
        });
        let Some(i) = pair else {
            return Ok(cur);
        };
        let s_step = &cur.steps[i];
        let l_step = &cur.steps[i + 1];
        let once = postpone_once(&s_step.from, s_step, l_step)?;
        let mut next = redexes[..i].to_vec();
        next.extend(once.sequence.redexes());
        next.extend_from_slice(&redexes[i + 2..]);
        redexes = next;
        cur = replay(&calc, &seq.start, &redexes)?;
    }
    Err(PostponeError::Budget(REWRITE_BUDGET))
}
