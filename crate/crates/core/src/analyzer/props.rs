//! Bounded search for counterexamples to three closure properties of SN
//! in the untyped symmetric λμ-calculus under `{β, μ, μ′}`:
//!
//! 1. `N` and `(M[x:=N] P⃗)` SN implies `(λx M N P⃗)` SN;
//! 2. `N` and `(M[α=ᵣN] P⃗)` SN implies `(μα M N P⃗)` SN;
//! 3. `P⃗` SN implies `(x P⃗)` SN.

use rayon::prelude::*;
use serde_json::{json, Value};

use super::enumerate::{lmu_terms_of_size, VarPool};
use super::sn::{sn_check, SnVerdict};
use crate::lmu::{subst_beta, subst_mu_r, Lmu, LmuRule, LmuTerm};
use crate::names::Name;
use crate::rewrite::RuleTag;

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Property {
    Lambda,
    Mu,
    Head,
}

impl Property {
    pub fn from_number(n: u8) -> Option<Self> {
        match n {
            1 => Some(Property::Lambda),
            2 => Some(Property::Mu),
            3 => Some(Property::Head),
            _ => None,
        }
    }

    pub fn number(self) -> u8 {
        match self {
            Property::Lambda => 1,
            Property::Mu => 2,
            Property::Head => 3,
        }
    }

    pub fn statement(self) -> &'static str {
        match self {
            Property::Lambda => "N, (M[x:=N] P...) in SN => (\\x.M N P...) in SN",
            Property::Mu => "N, (M[a=r N] P...) in SN => (mu a.M N P...) in SN",
            Property::Head => "P... in SN => (x P...) in SN",
        }
    }
}

/// A tuple instance: the conclusion term and the hypothesis terms.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Candidate {
    pub conclusion: LmuTerm,
    pub hypotheses: Vec<LmuTerm>,
}

impl Candidate {
    pub fn to_json(&self) -> Value {
        json!({
            "conclusion": self.conclusion.to_string(),
            "hypotheses": self.hypotheses.iter().map(|h| h.to_string()).collect::<Vec<_>>(),
        })
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct PropsReport {
    pub property: Property,
    pub max_cxty: usize,
    pub budget: usize,
    pub candidates: usize,
    /// Candidates whose hypotheses were all certified SN.
    pub hypotheses_met: usize,
    /// Hypotheses SN, conclusion loops.
    pub suspects: Vec<Candidate>,
    /// No hypothesis loops, but some verdict was cut off by the budget.
    pub inconclusive: Vec<Candidate>,
}

impl PropsReport {
    pub fn to_json(&self) -> Value {
        json!({
            "property": self.property.number(),
            "statement": self.property.statement(),
            "rules": LmuRule::beta_mu_mu_prime().tags(),
            "max_cxty": self.max_cxty,
            "node_budget": self.budget,
            "candidates": self.candidates,
            "hypotheses_met": self.hypotheses_met,
            "suspects": self.suspects.iter().map(Candidate::to_json).collect::<Vec<_>>(),
            "inconclusive": self.inconclusive.iter().map(Candidate::to_json).collect::<Vec<_>>(),
        })
    }

    pub fn summary(&self) -> String {
        format!(
            "property {}: {} candidates, {} with SN hypotheses, {} suspects, {} inconclusive",
            self.property.number(),
            self.candidates,
            self.hypotheses_met,
            self.suspects.len(),
            self.inconclusive.len()
        )
    }
}

/// Argument lists `P⃗` with `Σ (cxty(Pᵢ) + 1) ≤ room`, the `+1` being the
/// application node each argument adds. `min_len` filters out short lists.
fn arg_lists(room: usize, by_size: &[Vec<LmuTerm>], min_len: usize) -> Vec<Vec<LmuTerm>> {
    fn go(room: usize, by_size: &[Vec<LmuTerm>], cur: &mut Vec<LmuTerm>, out: &mut Vec<Vec<LmuTerm>>) {
        out.push(cur.clone());
        for s in 1..room {
            for p in &by_size[s] {
                cur.push(p.clone());
                go(room - s - 1, by_size, cur, out);
                cur.pop();
            }
        }
    }
    let mut out = Vec::new();
    go(room, by_size, &mut Vec::new(), &mut out);
    out.retain(|l| l.len() >= min_len);
    out
}

/// All candidate tuples whose conclusion has cxty at most `max_cxty`, over
/// the default variable pool.
pub fn candidates(property: Property, max_cxty: usize) -> Vec<Candidate> {
    let pool = VarPool::default();
    let by_size: Vec<Vec<LmuTerm>> = (0..=max_cxty).map(|s| lmu_terms_of_size(s, &pool)).collect();
    let mut out = Vec::new();
    match property {
        Property::Head => {
            let x = LmuTerm::Var(pool.lvars[0].clone());
            for ps in arg_lists(max_cxty.saturating_sub(1), &by_size, 1) {
                out.push(Candidate {
                    conclusion: LmuTerm::apps(x.clone(), ps.clone()),
                    hypotheses: ps,
                });
            }
        }
        Property::Lambda | Property::Mu => {
            for hs in 2..max_cxty {
                for head in &by_size[hs] {
                    let body = match (property, head) {
                        (Property::Lambda, LmuTerm::Abs(x, _, m)) => Binder::Var(x.clone(), (**m).clone()),
                        (Property::Mu, LmuTerm::Mu(a, _, m)) => Binder::Mu(a.clone(), (**m).clone()),
                        _ => continue,
                    };
                    for ns in 1..max_cxty - hs {
                        for n in &by_size[ns] {
                            for ps in arg_lists(max_cxty - hs - ns - 1, &by_size, 0) {
                                let reduced = match &body {
                                    Binder::Var(x, m) => subst_beta(m, x, n),
                                    Binder::Mu(a, m) => subst_mu_r(m, a, n),
                                };
                                let mut args = vec![n.clone()];
                                args.extend(ps.iter().cloned());
                                out.push(Candidate {
                                    conclusion: LmuTerm::apps(head.clone(), args),
                                    hypotheses: vec![n.clone(), LmuTerm::apps(reduced, ps)],
                                });
                            }
                        }
                    }
                }
            }
        }
    }
    out
}

enum Binder {
    Var(Name, LmuTerm),
    Mu(Name, LmuTerm),
}

enum Classified {
    Skip,
    Fine,
    Suspect,
    Inconclusive,
}

fn classify(calc: &Lmu, c: &Candidate, budget: usize) -> (bool, Classified) {
    let mut cut = false;
    for h in &c.hypotheses {
        match sn_check(calc, h, budget) {
            SnVerdict::CycleFound(_) => return (false, Classified::Skip),
            SnVerdict::BudgetExhausted { .. } => cut = true,
            SnVerdict::Sn { .. } => {}
        }
    }
    let met = !cut;
    let class = match (sn_check(calc, &c.conclusion, budget), cut) {
        (SnVerdict::Sn { .. }, _) => Classified::Fine,
        (SnVerdict::CycleFound(_), false) => Classified::Suspect,
        _ => Classified::Inconclusive,
    };
    (met, class)
}

pub fn search_counterexamples(property: Property, max_cxty: usize, budget: usize) -> PropsReport {
    let calc = Lmu::new(LmuRule::beta_mu_mu_prime());
    let cands = candidates(property, max_cxty);
    let classes: Vec<(bool, Classified)> = cands.par_iter().map(|c| classify(&calc, c, budget)).collect();
    let mut report = PropsReport {
        property,
        max_cxty,
        budget,
        candidates: cands.len(),
        hypotheses_met: 0,
        suspects: Vec::new(),
        inconclusive: Vec::new(),
    };
    for (c, (met, class)) in cands.into_iter().zip(classes) {
        report.hypotheses_met += met as usize;
        match class {
            Classified::Suspect => report.suspects.push(c),
            Classified::Inconclusive => report.inconclusive.push(c),
            Classified::Skip | Classified::Fine => {}
        }
    }
    report
}

/// Tags of the rule set the search runs under.
pub fn rules() -> Vec<&'static str> {
    LmuRule::beta_mu_mu_prime().iter().map(|r| r.tag()).collect()
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn head_candidates_are_bounded() {
        let cs = candidates(Property::Head, 4);
        assert!(cs.iter().all(|c| c.conclusion.cxty() <= 4));
        // Only (x P) with |P| ≤ 2 fits; (x P Q) already has cxty 5.
        let pool = VarPool::default();
        assert_eq!(cs.len(), lmu_terms_of_size(1, &pool).len() + lmu_terms_of_size(2, &pool).len());
        assert_eq!(candidates(Property::Head, 5).iter().filter(|c| c.hypotheses.len() == 2).count(), 4);
    }

    #[test]
    fn lambda_candidates_carry_the_reduct() {
        let cs = candidates(Property::Lambda, 4);
        assert!(!cs.is_empty());
        for c in &cs {
            assert!(c.conclusion.cxty() <= 4);
            let (head, args) = c.conclusion.spine();
            assert!(matches!(head, LmuTerm::Abs(..)));
            assert_eq!(args[0], &c.hypotheses[0]);
        }
    }

    #[test]
    fn small_searches() {
        let r = search_counterexamples(Property::Head, 5, 1000);
        assert!(r.suspects.is_empty());
        assert_eq!(r.hypotheses_met, r.candidates);
        let r = search_counterexamples(Property::Mu, 5, 1000);
        assert!(r.candidates > 0);
        assert_eq!(r.to_json()["property"], 2);
        assert_eq!(rules(), ["beta", "mu", "mu_prime"]);
    }
}
