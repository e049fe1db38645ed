//! Bounded strong-normalization verdicts and the η / ηc measures.

use std::collections::{HashSet, VecDeque};

use petgraph::algo::{tarjan_scc, toposort};
use petgraph::graph::NodeIndex;
use serde_json::{json, Value};

use super::graph::{build_graph, ReductionGraph};
use crate::rewrite::{redex_json, replay, Calculus, Redex, RuleTag};

/// A reachable loop: `prefix` leads from the root to a term, and `cycle`
/// leads from that term back to an α-equal one.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CycleWitness<R> {
    pub prefix: Vec<Redex<R>>,
    pub cycle: Vec<Redex<R>>,
}

impl<R: RuleTag> CycleWitness<R> {
    /// Replays the witness from `t` and checks that the cycle closes.
    pub fn replays<C: Calculus<Rule = R>>(&self, calc: &C, t: &C::Term) -> bool {
        let Ok(pre) = replay(calc, t, &self.prefix) else { return false };
        let entry = pre.last().clone();
        let Ok(cyc) = replay(calc, &entry, &self.cycle) else { return false };
        !self.cycle.is_empty() && calc.key(cyc.last()) == calc.key(&entry)
    }

    pub fn to_json(&self) -> Value {
        json!({
            "prefix": self.prefix.iter().map(redex_json).collect::<Vec<_>>(),
            "cycle": self.cycle.iter().map(redex_json).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum SnVerdict<R> {
    /// The whole graph was explored and is acyclic. `eta` is the length of
    /// the longest reduction; `etac` pairs it with the term's cxty.
    Sn { eta: usize, etac: (usize, usize) },
    CycleFound(CycleWitness<R>),
    /// No cycle among the explored nodes, but exploration was cut off.
    BudgetExhausted { nodes: usize },
}

impl<R: RuleTag> SnVerdict<R> {
    pub fn is_sn(&self) -> bool {
        matches!(self, SnVerdict::Sn { .. })
    }

    pub fn is_cycle(&self) -> bool {
        matches!(self, SnVerdict::CycleFound(_))
    }

    pub fn eta(&self) -> Option<usize> {
        match self {
            SnVerdict::Sn { eta, .. } => Some(*eta),
            _ => None,
        }
    }

    pub fn kind(&self) -> &'static str {
        match self {
            SnVerdict::Sn { .. } => "sn",
            SnVerdict::CycleFound(_) => "cycle",
            SnVerdict::BudgetExhausted { .. } => "budget",
        }
    }

    /// One-line text rendering, e.g. `SN eta=1`.
    pub fn summary(&self) -> String {
        match self {
            SnVerdict::Sn { eta, etac } => format!("SN eta={eta} etac=({}, {})", etac.0, etac.1),
            SnVerdict::CycleFound(w) => format!(
                "CYCLE prefix={} cycle={}",
                w.prefix.len(),
                w.cycle.len()
            ),
            SnVerdict::BudgetExhausted { nodes } => format!("BUDGET-EXHAUSTED nodes={nodes}"),
        }
    }

    pub fn to_json(&self) -> Value {
        match self {
            SnVerdict::Sn { eta, etac } => json!({"verdict": "sn", "eta": eta, "etac": [etac.0, etac.1]}),
            SnVerdict::CycleFound(w) => json!({"verdict": "cycle", "witness": w.to_json()}),
            SnVerdict::BudgetExhausted { nodes } => json!({"verdict": "budget", "nodes": nodes}),
        }
    }
}

/// A cycle among the explored nodes, if any.
pub fn find_cycle<C: Calculus>(g: &ReductionGraph<C>) -> Option<CycleWitness<C::Rule>> {
    for scc in tarjan_scc(&g.graph) {
        let v = *scc.iter().min()?;
        let looping = scc.len() > 1 || g.successors(v).iter().any(|(t, _)| *t == v);
        if !looping {
            continue;
        }
        let members: HashSet<NodeIndex> = scc.iter().copied().collect();
        // Shortest path v ->+ v inside the component.
        let mut pred: Vec<Option<(NodeIndex, Redex<C::Rule>)>> = vec![None; g.node_count()];
        let mut queue = VecDeque::new();
        let mut seen = HashSet::new();
        let mut closing = None;
        queue.push_back(v);
        seen.insert(v);
        'bfs: while let Some(u) = queue.pop_front() {
            for (w, r) in g.successors(u) {
                if w == v {
                    closing = Some((u, r.clone()));
                    break 'bfs;
                }
                if members.contains(&w) && seen.insert(w) {
                    pred[w.index()] = Some((u, r.clone()));
                    queue.push_back(w);
                }
            }
        }
        let (mut u, last) = closing.expect("a strongly connected component with a loop closes");
        let mut cycle = vec![last];
        while u != v {
            let (p, r) = pred[u.index()].clone().expect("bfs predecessor");
            cycle.push(r);
            u = p;
        }
        cycle.reverse();
        return Some(CycleWitness {
            prefix: g.path_to(v),
            cycle,
        });
    }
    None
}

/// η of every node of a complete acyclic graph.
pub fn etas<C: Calculus>(g: &ReductionGraph<C>) -> Option<Vec<usize>> {
    if !g.complete {
        return None;
    }
    let order = toposort(&g.graph, None).ok()?;
    let mut eta = vec![0usize; g.node_count()];
    for &n in order.iter().rev() {
        eta[n.index()] = g
            .successors(n)
            .iter()
            .map(|(t, _)| eta[t.index()] + 1)
            .max()
            .unwrap_or(0);
    }
    Some(eta)
}

/// Verdict for an already built graph.
pub fn verdict<C: Calculus>(calc: &C, g: &ReductionGraph<C>) -> SnVerdict<C::Rule> {
    if let Some(w) = find_cycle(g) {
        return SnVerdict::CycleFound(w);
    }
    if !g.complete {
        return SnVerdict::BudgetExhausted { nodes: g.node_count() };
    }
    let eta = etas(g).expect("complete and acyclic")[0];
    SnVerdict::Sn {
        eta,
        etac: (eta, calc.cxty(g.term(g.root()))),
    }
}

/// Builds the graph under growing budgets up to `budget`. Any cycle in a
/// partial graph is a real one, so looping terms whose reducts blow up are
/// caught before the full budget is spent.
pub fn sn_check<C: Calculus>(calc: &C, t: &C::Term, budget: usize) -> SnVerdict<C::Rule> {
    let budget = budget.max(1);
    let mut b = budget.min(64);
    loop {
        let v = verdict(calc, &build_graph(calc, t, b));
        if b == budget || !matches!(v, SnVerdict::BudgetExhausted { .. }) {
            return v;
        }
        b = (b * 8).min(budget);
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbar::{parse_any, Lbar, LbarRule};
    use crate::lmu::{parse_lmu, Lmu, LmuRule};
    use crate::rewrite::RuleSet;

    #[test]
    fn witness_is_sn_with_eta_one() {
        let t = parse_any("< mu @a. < x | @b > | mu y. < x | @a > >").unwrap();
        let v = sn_check(&Lbar::new(LbarRule::mu_mutilde()), &t, 1000);
        assert_eq!(v, SnVerdict::Sn { eta: 1, etac: (1, t.cxty()) });
        assert_eq!(v.summary(), format!("SN eta=1 etac=(1, {})", t.cxty()));
    }

    #[test]
    fn omega_cycles() {
        let calc = Lmu::new(RuleSet::of(&[LmuRule::Beta]));
        let t = parse_lmu("(\\x. (x x) \\x. (x x))").unwrap();
        let SnVerdict::CycleFound(w) = sn_check(&calc, &t, 1000) else { panic!() };
        assert!(w.prefix.is_empty());
        assert_eq!(w.cycle.len(), 1);
        assert!(w.replays(&calc, &t));
    }

    #[test]
    fn lmu_witness() {
        let t = parse_lmu("(mu @a. x mu @b. y)").unwrap();
        let v = sn_check(&Lmu::new(LmuRule::mu_mu_prime()), &t, 1000);
        assert_eq!(v.eta(), Some(1));
    }

    #[test]
    fn longer_cycle_is_replayable() {
        // Ω under a redex: the inner step loops, the outer one exits to Ω.
        let calc = Lmu::new(RuleSet::of(&[LmuRule::Beta]));
        let t = parse_lmu("(\\z. z (\\x. (x x) \\x. (x x)))").unwrap();
        let SnVerdict::CycleFound(w) = sn_check(&calc, &t, 1000) else { panic!() };
        assert!(w.replays(&calc, &t));
    }

    #[test]
    fn eta_consistency() {
        let t = parse_any("< mu @a. < mu @b. < x | @a > | @b > | mu y. < y | @c > >").unwrap();
        let calc = Lbar::new(LbarRule::mu_mutilde());
        let g = build_graph(&calc, &t, 1000);
        let e = etas(&g).unwrap();
        for n in g.nodes() {
            let succ = g.successors(n);
            if succ.is_empty() {
                assert_eq!(e[n.index()], 0);
            } else {
                assert_eq!(e[n.index()], 1 + succ.iter().map(|(m, _)| e[m.index()]).max().unwrap());
            }
        }
    }

    #[test]
    fn cut_off_graph_is_never_sn() {
        let t = parse_any("< mu @a. < x | @b > | mu y. < x | @a > >").unwrap();
        let v = sn_check(&Lbar::new(LbarRule::mu_mutilde()), &t, 1);
        assert_eq!(v, SnVerdict::BudgetExhausted { nodes: 1 });
    }
}
