//! Bounded reduction graphs over α-equivalence classes.

use std::collections::HashMap;
use std::fmt::Write as _;

use petgraph::graph::{DiGraph, EdgeIndex, NodeIndex};
use petgraph::visit::EdgeRef;
use petgraph::Direction;
use thiserror::Error;

use crate::rewrite::{Calculus, Redex, RuleTag};

/// The part of the one-step reduction graph of a term explored within a
/// node budget. Node `0` is the root; nodes are numbered in breadth-first
/// discovery order and store the first representative met.
pub struct ReductionGraph<C: Calculus> {
    pub graph: DiGraph<C::Term, Redex<C::Rule>>,
    index: HashMap<C::Key, NodeIndex>,
    /// BFS tree edge that discovered each node.
    parent: Vec<Option<EdgeIndex>>,
    /// Nodes below this index have all their out-edges recorded.
    pub expanded: usize,
    /// Every reachable class was found and expanded.
    pub complete: bool,
    pub budget: usize,
}

impl<C: Calculus> ReductionGraph<C> {
    pub fn root(&self) -> NodeIndex {
        NodeIndex::new(0)
    }

    pub fn node_count(&self) -> usize {
        self.graph.node_count()
    }

    pub fn edge_count(&self) -> usize {
        self.graph.edge_count()
    }

    pub fn term(&self, n: NodeIndex) -> &C::Term {
        &self.graph[n]
    }

    pub fn lookup(&self, key: &C::Key) -> Option<NodeIndex> {
        self.index.get(key).copied()
    }

    pub fn contains(&self, key: &C::Key) -> bool {
        self.index.contains_key(key)
    }

    pub fn is_expanded(&self, n: NodeIndex) -> bool {
        n.index() < self.expanded
    }

    /// An expanded node with no out-edges.
    pub fn is_normal(&self, n: NodeIndex) -> bool {
        self.is_expanded(n) && self.graph.edges_directed(n, Direction::Outgoing).next().is_none()
    }

    pub fn nodes(&self) -> impl Iterator<Item = NodeIndex> + '_ {
        self.graph.node_indices()
    }

    /// `(source, redex, target)` for every edge, in insertion order.
    pub fn edges(&self) -> impl Iterator<Item = (NodeIndex, &Redex<C::Rule>, NodeIndex)> + '_ {
        self.graph.edge_references().map(|e| (e.source(), e.weight(), e.target()))
    }

    pub fn successors(&self, n: NodeIndex) -> Vec<(NodeIndex, &Redex<C::Rule>)> {
        let mut out: Vec<_> = self
            .graph
            .edges_directed(n, Direction::Outgoing)
            .map(|e| (e.id(), e.target(), e.weight()))
            .collect();
        out.sort_by_key(|(id, _, _)| *id);
        out.into_iter().map(|(_, t, r)| (t, r)).collect()
    }

    /// Redexes along the BFS tree from the root to `n`.
    pub fn path_to(&self, n: NodeIndex) -> Vec<Redex<C::Rule>> {
        let mut path = Vec::new();
        let mut cur = n;
        while let Some(e) = self.parent[cur.index()] {
            path.push(self.graph[e].clone());
            cur = self.graph.edge_endpoints(e).expect("edge exists").0;
        }
        path.reverse();
        path
    }

    /// All α-distinct normal forms, in discovery order.
    pub fn normal_forms(&self) -> Vec<NodeIndex> {
        self.nodes().filter(|&n| self.is_normal(n)).collect()
    }

    /// Graphviz rendering: nodes labelled by terms, edges by rule tags.
    /// Normal forms are drawn as boxes.
    pub fn to_dot(&self) -> String {
        let mut out = String::from("digraph reduction {\n");
        for n in self.nodes() {
            let label = dot_escape(&self.graph[n].to_string());
            let shape = if self.is_normal(n) { ", shape=box" } else { "" };
            let _ = writeln!(out, "  n{} [label=\"{label}\"{shape}];", n.index());
        }
        for (s, r, t) in self.edges() {
            let _ = writeln!(
                out,
                "  n{} -> n{} [label=\"{} {:?}\"];",
                s.index(),
                t.index(),
                r.rule.tag(),
                r.position
            );
        }
        out.push_str("}\n");
        out
    }
}

fn dot_escape(s: &str) -> String {
    s.replace('\\', "\\\\").replace('"', "\\\"")
}

/// Explores the graph of `t` breadth first, keeping at most `budget` nodes.
pub fn build_graph<C: Calculus>(calc: &C, t: &C::Term, budget: usize) -> ReductionGraph<C> {
    let budget = budget.max(1);
    let mut g: ReductionGraph<C> = ReductionGraph {
        graph: DiGraph::new(),
        index: HashMap::new(),
        parent: vec![None],
        expanded: 0,
        complete: false,
        budget,
    };
    let root = g.graph.add_node(t.clone());
    g.index.insert(calc.key(t), root);
    let mut i = 0;
    'bfs: while i < g.graph.node_count() {
        let n = NodeIndex::new(i);
        let cur = g.graph[n].clone();
        for r in calc.redexes(&cur) {
            let next = calc.contract(&cur, &r).expect("redexes returned by the calculus contract");
            let k = calc.key(&next);
            let target = match g.index.get(&k) {
                Some(&m) => m,
                None => {
                    if g.graph.node_count() == budget {
                        break 'bfs;
                    }
                    let m = g.graph.add_node(next);
                    g.index.insert(k, m);
                    g.parent.push(None);
                    m
                }
            };
            let e = g.graph.add_edge(n, target, r);
            if g.parent[target.index()].is_none() && target != root {
                g.parent[target.index()] = Some(e);
            }
        }
        i += 1;
    }
    g.expanded = i;
    g.complete = i == g.graph.node_count();
    g
}

#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("the graph is incomplete ({nodes} nodes explored within the budget)")]
pub struct IncompleteGraph {
    pub nodes: usize,
}

/// All unordered pairs of α-distinct normal forms reachable from the root.
pub fn confluence_witnesses<C: Calculus>(
    g: &ReductionGraph<C>,
) -> Result<Vec<(C::Term, C::Term)>, IncompleteGraph> {
    if !g.complete {
        return Err(IncompleteGraph { nodes: g.node_count() });
    }
    let nfs = g.normal_forms();
    let mut out = Vec::new();
    for (i, a) in nfs.iter().enumerate() {
        for b in &nfs[i + 1..] {
            out.push((g.term(*a).clone(), g.term(*b).clone()));
        }
    }
    Ok(out)
}

/// Rebuilds the path to every node from the root and checks it lands in the
/// node's class. Used by tests and the acceptance suite.
pub fn paths_replay<C: Calculus>(calc: &C, g: &ReductionGraph<C>) -> bool {
    g.nodes().all(|n| {
        crate::rewrite::replay(calc, g.term(g.root()), &g.path_to(n))
            .map(|s| calc.key(s.last()) == calc.key(g.term(n)))
            .unwrap_or(false)
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbar::{parse_any, Lbar, LbarRule};
    use crate::lmu::{parse_lmu, Lmu, LmuRule};
    use crate::rewrite::RuleSet;

    const WITNESS: &str = "< mu @a. < x | @b > | mu y. < x | @a > >";

    #[test]
    fn witness_graph() {
        let calc = Lbar::new(LbarRule::mu_mutilde());
        let g = build_graph(&calc, &parse_any(WITNESS).unwrap(), 100);
        assert!(g.complete);
        assert_eq!((g.node_count(), g.edge_count()), (3, 2));
        let nfs: Vec<String> = g.normal_forms().into_iter().map(|n| g.term(n).to_string()).collect();
        assert_eq!(nfs, ["< x | @b >", "< x | @a >"]);
        assert_eq!(confluence_witnesses(&g).unwrap().len(), 1);
        assert!(paths_replay(&calc, &g));
    }

    #[test]
    fn single_node() {
        let g = build_graph(&Lbar::new(RuleSet::all()), &parse_any("< x | @a >").unwrap(), 10);
        assert_eq!((g.node_count(), g.edge_count()), (1, 0));
        assert!(g.complete);
        assert_eq!(g.to_dot(), "digraph reduction {\n  n0 [label=\"< x | @a >\", shape=box];\n}\n");
    }

    #[test]
    fn omega_self_loop() {
        let calc = Lmu::new(RuleSet::of(&[LmuRule::Beta]));
        let g = build_graph(&calc, &parse_lmu("(\\x. (x x) \\x. (x x))").unwrap(), 10);
        assert_eq!((g.node_count(), g.edge_count()), (1, 1));
        assert!(g.complete);
        assert!(g.normal_forms().is_empty());
        assert!(g.to_dot().contains("n0 -> n0 [label=\"beta []\"]"));
        assert!(g.to_dot().contains("\\\\x"));
    }

    #[test]
    fn budget_marks_incomplete() {
        let calc = Lbar::new(LbarRule::mu_mutilde());
        let g = build_graph(&calc, &parse_any(WITNESS).unwrap(), 2);
        assert!(!g.complete);
        assert_eq!(g.node_count(), 2);
        assert!(confluence_witnesses(&g).is_err());
        // The root was cut off mid-expansion, so nothing counts as normal.
        assert_eq!(g.expanded, 0);
        assert!(g.normal_forms().is_empty());
    }
}
