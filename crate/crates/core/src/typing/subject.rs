//! Subject reduction along bounded reduction graphs.

use std::fmt::Debug;

use petgraph::graph::NodeIndex;
use serde_json::{json, Value};

use super::context::{LbarContexts, LmuContext};
use super::derivation::TypeError;
use super::lbar::lbar_type_of;
use super::lmu::lmu_type_of;
use crate::analyzer::{build_graph, ReductionGraph};
use crate::lbar::{Lbar, LbarRule, LbarTerm};
use crate::lmu::{Lmu, LmuRule, LmuTerm};
use crate::rewrite::{Calculus, RuleSet, RuleTag};

/// An edge whose target lost the source's judgment.
#[derive(Debug, Clone, PartialEq)]
pub struct Violation {
    pub source: String,
    pub rule: String,
    pub position: Vec<usize>,
    pub target: String,
    /// The type error, or the mismatching type, at the target.
    pub detail: String,
}

#[derive(Debug, Clone, PartialEq)]
pub struct SubjectReport {
    /// Rendered judgment of the root (`c : (Γ ⊢ Δ)` or the term's type).
    pub judgment: String,
    pub nodes: usize,
    pub edges_checked: usize,
    /// False when the graph was cut off by the node budget; only the
    /// explored edges were checked.
    pub complete: bool,
    pub violations: Vec<Violation>,
}

impl SubjectReport {
    pub fn holds(&self) -> bool {
        self.violations.is_empty()
    }

    pub fn to_json(&self) -> Value {
        json!({
            "judgment": self.judgment,
            "nodes": self.nodes,
            "edges_checked": self.edges_checked,
            "complete": self.complete,
            "violations": self.violations.iter().map(|v| json!({
                "source": v.source,
                "rule": v.rule,
                "position": v.position,
                "target": v.target,
                "detail": v.detail,
            })).collect::<Vec<_>>(),
        })
    }
}

/// Checks every edge of `g` against the root judgment `expected`.
pub fn check_graph<C, T, F>(g: &ReductionGraph<C>, expected: &T, judgment: String, type_of: F) -> SubjectReport
where
    C: Calculus,
    T: PartialEq + Debug,
    F: Fn(&C::Term) -> Result<T, TypeError>,
{
    let mut cache: Vec<Option<Result<(), String>>> = vec![None; g.node_count()];
    cache[0] = Some(Ok(()));
    let mut check = |n: NodeIndex| -> Result<(), String> {
        cache[n.index()]
            .get_or_insert_with(|| match type_of(g.term(n)) {
                Ok(t) if &t == expected => Ok(()),
                Ok(t) => Err(format!("type changed to {t:?}")),
                Err(e) => Err(e.to_string()),
            })
            .clone()
    };
    let mut violations = Vec::new();
    let mut edges = 0;
    for (s, r, t) in g.edges() {
        edges += 1;
        if let Err(detail) = check(t) {
            violations.push(Violation {
                source: g.term(s).to_string(),
                rule: r.rule.tag().to_string(),
                position: r.position.clone(),
                target: g.term(t).to_string(),
                detail,
            });
        }
    }
    SubjectReport {
        judgment,
        nodes: g.node_count(),
        edges_checked: edges,
        complete: g.complete,
        violations,
    }
}

pub fn check_subject_reduction_lbar(
    t: &LbarTerm,
    ctx: &LbarContexts,
    rules: RuleSet<LbarRule>,
    budget: usize,
) -> Result<SubjectReport, TypeError> {
    let calc = Lbar::new(rules);
    let g = build_graph(&calc, t, budget);
    subject_lbar_on(&g, t, ctx)
}

/// Subject reduction on an already built λ̄μμ̃ graph rooted at `t`.
pub fn subject_lbar_on(g: &ReductionGraph<Lbar>, t: &LbarTerm, ctx: &LbarContexts) -> Result<SubjectReport, TypeError> {
    let ty = lbar_type_of(t, ctx)?;
    let judgment = match &ty {
        None => format!("c : ({} ⊢ {})", ctx.gamma_string(), ctx.delta_string()),
        Some(a) => format!("{a}"),
    };
    Ok(check_graph(g, &ty, judgment, |u| lbar_type_of(u, ctx)))
}

pub fn check_subject_reduction_lmu(
    m: &LmuTerm,
    ctx: &LmuContext,
    rules: RuleSet<LmuRule>,
    budget: usize,
) -> Result<SubjectReport, TypeError> {
    let calc = Lmu::new(rules).with_context(ctx.clone());
    let g = build_graph(&calc, m, budget);
    subject_lmu_on(&g, m, ctx)
}

/// Subject reduction on an already built λμ graph rooted at `m`. The graph
/// should come from a calculus carrying `ctx`, so that μ′ contractions can
/// update annotations.
pub fn subject_lmu_on(g: &ReductionGraph<Lmu>, m: &LmuTerm, ctx: &LmuContext) -> Result<SubjectReport, TypeError> {
    let ty = lmu_type_of(m, ctx)?;
    let judgment = format!("{ctx} ⊢ M : {ty}");
    Ok(check_graph(g, &ty, judgment, |u| lmu_type_of(u, ctx)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbar::parse_any;
    use crate::lmu::parse_lmu;
    use crate::typing::types::{LbarType, LmuType};

    #[test]
    fn beta_keeps_type() {
        let ctx = LmuContext::new().with_var("y", LmuType::atom("A"));
        let m = parse_lmu("(\\x:A. x y)").unwrap();
        let r = check_subject_reduction_lmu(&m, &ctx, LmuRule::beta_mu_mu_prime(), 100).unwrap();
        assert!(r.holds() && r.complete);
        assert_eq!(r.edges_checked, 1);
    }

    #[test]
    fn command_keeps_contexts() {
        let a = LbarType::atom("A");
        let ctx = LbarContexts::new().with_l("x", a.clone()).with_r("b", a);
        let t = parse_any("< mu @a:A. < x | @a > | @b >").unwrap();
        let r = check_subject_reduction_lbar(&t, &ctx, LbarRule::logical(), 100).unwrap();
        assert!(r.holds());
        assert_eq!((r.nodes, r.edges_checked), (2, 1));
        assert!(r.judgment.starts_with("c : ("));
    }

    #[test]
    fn mu_prime_with_context_keeps_type() {
        let ctx = LmuContext::new()
            .with_var("y", LmuType::parse("A -> B").unwrap())
            .with_var("x", LmuType::atom("A"));
        let m = parse_lmu("(y mu @a:A. [@a] x)").unwrap();
        let r = check_subject_reduction_lmu(&m, &ctx, LmuRule::beta_mu_mu_prime(), 100).unwrap();
        assert!(r.holds(), "{:?}", r.violations);
        assert_eq!(r.edges_checked, 1);
    }

    #[test]
    fn untyped_root_is_an_error() {
        let m = parse_lmu("(x x)").unwrap();
        let ctx = LmuContext::new().with_var("x", LmuType::atom("A"));
        assert!(check_subject_reduction_lmu(&m, &ctx, LmuRule::beta_mu_mu_prime(), 10).is_err());
    }

    #[test]
    fn mismatch_is_reported() {
        // Without the context the μ′ contraction keeps the stale annotation.
        let ctx = LmuContext::new()
            .with_var("y", LmuType::parse("A -> B").unwrap())
            .with_var("x", LmuType::atom("A"));
        let m = parse_lmu("(y mu @a:A. [@a] x)").unwrap();
        let g = build_graph(&Lmu::new(LmuRule::beta_mu_mu_prime()), &m, 10);
        let r = subject_lmu_on(&g, &m, &ctx).unwrap();
        assert_eq!(r.violations.len(), 1);
        assert_eq!(r.violations[0].rule, "mu_prime");
    }
}
