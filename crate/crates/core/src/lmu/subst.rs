//! Substitutions on λμ terms: ordinary `M[x:=N]`, the μ-substitutions
//! `M[α=ᵣN]`, `M[α=ₗN]`, `N[α=ₐM]`, and μ-variable renaming `M[β:=α]`.
//!
//! All of them are instances of one simultaneous, capture-avoiding pass.
//! At a `(α U)` node the body is substituted first and then wrapped.

use std::collections::{BTreeMap, HashSet};

use super::address::{addr_get, addr_set, Address, Elementary};
use super::term::LmuTerm;
use crate::names::{FreeVars, FreshSupply, Name};

/// What happens to `(α U)` for a μ-variable `α` in the domain.
#[derive(Debug, Clone, PartialEq, Eq)]
pub enum MuAction {
    /// `(β U)`
    Rename(Name),
    /// `(α (U N))`
    Right(LmuTerm),
    /// `(α (N U))`
    Left(LmuTerm),
    /// `(α M⟨a = U⟩)`; the address must be defined on `M`.
    Addr(Address, LmuTerm),
}

impl MuAction {
    fn free_vars(&self) -> FreeVars {
        match self {
            MuAction::Rename(b) => FreeVars {
                rvars: [b.clone()].into(),
                ..FreeVars::default()
            },
            MuAction::Right(n) | MuAction::Left(n) | MuAction::Addr(_, n) => n.free_vars(),
        }
    }

    fn names(&self, out: &mut HashSet<Name>) {
        match self {
            MuAction::Rename(b) => {
                out.insert(b.clone());
            }
            MuAction::Right(n) | MuAction::Left(n) | MuAction::Addr(_, n) => n.all_names(out),
        }
    }
}

#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LmuSubst {
    lmap: BTreeMap<Name, LmuTerm>,
    mumap: BTreeMap<Name, MuAction>,
}

impl LmuSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_var(mut self, x: &Name, n: LmuTerm) -> Self {
        self.lmap.insert(x.clone(), n);
        self
    }

    pub fn with_mu(mut self, a: &Name, action: MuAction) -> Self {
        self.mumap.insert(a.clone(), action);
        self
    }

    fn image_fv(&self) -> FreeVars {
        self.lmap
            .values()
            .map(LmuTerm::free_vars)
            .chain(self.mumap.values().map(MuAction::free_vars))
            .fold(FreeVars::default(), FreeVars::union)
    }

    fn touches(&self, t: &LmuTerm) -> bool {
        self.lmap.keys().any(|x| t.has_free_l(x)) || self.mumap.keys().any(|a| t.has_free_r(a))
    }

    pub fn apply(&self, t: &LmuTerm) -> LmuTerm {
        if self.lmap.is_empty() && self.mumap.is_empty() {
            return t.clone();
        }
        let mut names = HashSet::new();
        t.all_names(&mut names);
        self.lmap.values().for_each(|n| n.all_names(&mut names));
        self.mumap.values().for_each(|m| m.names(&mut names));
        let mut supply = FreshSupply::new(names);
        self.go(t, &self.image_fv(), &mut supply)
    }

    fn go(&self, t: &LmuTerm, fv: &FreeVars, supply: &mut FreshSupply) -> LmuTerm {
        if !self.touches(t) {
            return t.clone();
        }
        match t {
            LmuTerm::Var(x) => self.lmap.get(x).cloned().unwrap_or_else(|| t.clone()),
            LmuTerm::App(f, a) => LmuTerm::app(self.go(f, fv, supply), self.go(a, fv, supply)),
            LmuTerm::Abs(x, ty, b) => {
                let mut inner = self.clone();
                inner.lmap.remove(x);
                let (x, b) = if fv.lvars.contains(x) && inner.touches(b) {
                    let x2 = supply.fresh(x);
                    let renamed = LmuSubst::new().with_var(x, LmuTerm::Var(x2.clone()));
                    (x2, renamed.go(b, &FreeVars::default(), supply))
                } else {
                    (x.clone(), (**b).clone())
                };
                LmuTerm::Abs(x, ty.clone(), Box::new(inner.go(&b, fv, supply)))
            }
            LmuTerm::Mu(a, ty, b) => {
                let mut inner = self.clone();
                inner.mumap.remove(a);
                let (a, b) = if fv.rvars.contains(a) && inner.touches(b) {
                    let a2 = supply.fresh(a);
                    let renamed = LmuSubst::new().with_mu(a, MuAction::Rename(a2.clone()));
                    (a2, renamed.go(b, &FreeVars::default(), supply))
                } else {
                    (a.clone(), (**b).clone())
                };
                LmuTerm::Mu(a, ty.clone(), Box::new(inner.go(&b, fv, supply)))
            }
            LmuTerm::Named(a, u) => {
                let u2 = self.go(u, fv, supply);
                match self.mumap.get(a) {
                    None => LmuTerm::Named(a.clone(), Box::new(u2)),
                    Some(MuAction::Rename(b)) => LmuTerm::Named(b.clone(), Box::new(u2)),
                    Some(MuAction::Right(n)) => LmuTerm::Named(a.clone(), Box::new(LmuTerm::app(u2, n.clone()))),
                    Some(MuAction::Left(n)) => LmuTerm::Named(a.clone(), Box::new(LmuTerm::app(n.clone(), u2))),
                    Some(MuAction::Addr(addr, m)) => {
                        let wrapped = addr_set(m, addr, u2).expect("address checked on construction");
                        LmuTerm::Named(a.clone(), Box::new(wrapped))
                    }
                }
            }
        }
    }
}

/// `M[x := N]`
pub fn subst_beta(m: &LmuTerm, x: &Name, n: &LmuTerm) -> LmuTerm {
    LmuSubst::new().with_var(x, n.clone()).apply(m)
}

/// `M[α =ᵣ N]`
pub fn subst_mu_r(m: &LmuTerm, a: &Name, n: &LmuTerm) -> LmuTerm {
    LmuSubst::new().with_mu(a, MuAction::Right(n.clone())).apply(m)
}

/// `M[α =ₗ N]`
pub fn subst_mu_l(m: &LmuTerm, a: &Name, n: &LmuTerm) -> LmuTerm {
    LmuSubst::new().with_mu(a, MuAction::Left(n.clone())).apply(m)
}

/// `M[β := α]`
pub fn rename_mu(m: &LmuTerm, b: &Name, a: &Name) -> LmuTerm {
    LmuSubst::new().with_mu(b, MuAction::Rename(a.clone())).apply(m)
}

/// `N[α =ₐ M]`, or `None` if `a` is undefined on `M`.
pub fn subst_mu_addr(n: &LmuTerm, a: &Name, addr: &Address, m: &LmuTerm) -> Option<LmuTerm> {
    addr_get(m, addr)?;
    Some(LmuSubst::new().with_mu(a, MuAction::Addr(addr.clone(), m.clone())).apply(n))
}

/// Applies a chain of elementary substitutions in order.
pub fn apply_chain(n: &LmuTerm, a: &Name, chain: &[Elementary]) -> LmuTerm {
    chain.iter().fold(n.clone(), |acc, e| match e {
        Elementary::Right(t) => subst_mu_r(&acc, a, t),
        Elementary::Left(t) => subst_mu_l(&acc, a, t),
    })
}
