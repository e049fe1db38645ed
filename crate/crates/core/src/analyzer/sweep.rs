//! SN sweeps over enumerated terms.

use std::collections::BTreeMap;
use std::fmt::Write as _;

use rayon::prelude::*;
use serde_json::{json, Value};

use super::sn::{sn_check, SnVerdict};
use crate::rewrite::{Calculus, RuleTag};

/// Aggregate sweep result; the JSON form is
/// `{"spec", "rules", "total", "verdicts": {"sn", "cycle", "budget"}, "max_eta", "violations"}`.
#[derive(Debug, Clone, PartialEq)]
pub struct SweepReport {
    pub spec: String,
    pub rules: Vec<String>,
    pub node_budget: usize,
    pub total: usize,
    pub sn: usize,
    pub cycle: usize,
    pub budget: usize,
    pub max_eta: Option<usize>,
    pub eta_histogram: BTreeMap<usize, usize>,
    /// Every term that did not get an SN verdict.
    pub violations: Vec<Value>,
}

impl SweepReport {
    pub fn all_sn(&self) -> bool {
        self.sn == self.total
    }

    pub fn to_json(&self) -> Value {
        json!({
            "spec": self.spec,
            "rules": self.rules,
            "node_budget": self.node_budget,
            "total": self.total,
            "verdicts": {"sn": self.sn, "cycle": self.cycle, "budget": self.budget},
            "max_eta": self.max_eta,
            "eta_histogram": self.eta_histogram.iter().map(|(k, v)| json!([k, v])).collect::<Vec<_>>(),
            "violations": self.violations,
        })
    }

    /// `eta,count` rows, one per observed η.
    pub fn eta_csv(&self) -> String {
        let mut out = String::from("eta,count\n");
        for (eta, count) in &self.eta_histogram {
            let _ = writeln!(out, "{eta},{count}");
        }
        out
    }

    pub fn summary(&self) -> String {
        format!(
            "{}: {} terms, sn={} cycle={} budget={} max_eta={}",
            self.spec,
            self.total,
            self.sn,
            self.cycle,
            self.budget,
            self.max_eta.map_or("-".to_string(), |e| e.to_string())
        )
    }
}

/// Verdicts for every term, in input order, computed in parallel.
pub fn sweep_verdicts<C: Calculus>(calc: &C, terms: &[C::Term], budget: usize) -> Vec<SnVerdict<C::Rule>> {
    terms.par_iter().map(|t| sn_check(calc, t, budget)).collect()
}

pub fn report<C: Calculus>(
    calc: &C,
    spec: &str,
    terms: &[C::Term],
    verdicts: &[SnVerdict<C::Rule>],
    budget: usize,
) -> SweepReport {
    let mut r = SweepReport {
        spec: spec.to_string(),
        rules: calc.rules().tags().iter().map(|s| s.to_string()).collect(),
        node_budget: budget,
        total: terms.len(),
        sn: 0,
        cycle: 0,
        budget: 0,
        max_eta: None,
        eta_histogram: BTreeMap::new(),
        violations: Vec::new(),
    };
    for (t, v) in terms.iter().zip(verdicts) {
        match v {
            SnVerdict::Sn { eta, .. } => {
                r.sn += 1;
                *r.eta_histogram.entry(*eta).or_default() += 1;
                r.max_eta = Some(r.max_eta.map_or(*eta, |m| m.max(*eta)));
            }
            other => {
                if other.is_cycle() {
                    r.cycle += 1;
                } else {
                    r.budget += 1;
                }
                r.violations.push(json!({
                    "term": t.to_string(),
                    "ast": calc.to_json(t),
                    "verdict": other.to_json(),
                }));
            }
        }
    }
    r
}

pub fn sweep_sn<C: Calculus>(calc: &C, spec: &str, terms: &[C::Term], budget: usize) -> SweepReport {
    let verdicts = sweep_verdicts(calc, terms, budget);
    report(calc, spec, terms, &verdicts, budget)
}

/// Tags of the rules a report was produced with.
pub fn rule_tags<R: RuleTag>(rules: &[R]) -> Vec<String> {
    rules.iter().map(|r| r.tag().to_string()).collect()
}
