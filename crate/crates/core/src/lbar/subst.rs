//! Capture-avoiding simultaneous substitution for λ̄μμ̃ terms.

use std::collections::{BTreeMap, HashSet};

use super::term::{FreeVars, LbarTerm};
use crate::names::{FreshSupply, Name};

/// A simultaneous substitution `[x₁ := t₁, …][α₁ := u₁, …]`.
///
/// l-variables map to l-terms and r-variables to r-terms; all bindings are
/// applied at once, so an image never sees another binding.
#[derive(Debug, Clone, Default, PartialEq, Eq)]
pub struct LbarSubst {
    lmap: BTreeMap<Name, LbarTerm>,
    rmap: BTreeMap<Name, LbarTerm>,
}

#[derive(Debug, Clone, PartialEq, Eq, thiserror::Error)]
#[error("substitution image for {var} must be an {expected}, found an {found}")]
pub struct SubstSortError {
    pub var: String,
    pub expected: super::Sort,
    pub found: super::Sort,
}

impl LbarSubst {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn l(x: &Name, v: LbarTerm) -> Self {
        let mut s = Self::new();
        s.lmap.insert(x.clone(), v);
        s
    }

    pub fn r(a: &Name, v: LbarTerm) -> Self {
        let mut s = Self::new();
        s.rmap.insert(a.clone(), v);
        s
    }

    /// `σ + [x := v]`.
    pub fn with_l(mut self, x: &Name, v: LbarTerm) -> Result<Self, SubstSortError> {
        if v.sort() != super::Sort::LTerm {
            return Err(SubstSortError {
                var: x.to_string(),
                expected: super::Sort::LTerm,
                found: v.sort(),
            });
        }
        self.lmap.insert(x.clone(), v);
        Ok(self)
    }

    /// `σ + [α := v]`.
    pub fn with_r(mut self, a: &Name, v: LbarTerm) -> Result<Self, SubstSortError> {
        if v.sort() != super::Sort::RTerm {
            return Err(SubstSortError {
                var: format!("@{a}"),
                expected: super::Sort::RTerm,
                found: v.sort(),
            });
        }
        self.rmap.insert(a.clone(), v);
        Ok(self)
    }

    pub fn is_empty(&self) -> bool {
        self.lmap.is_empty() && self.rmap.is_empty()
    }

    pub fn domain_l(&self) -> impl Iterator<Item = &Name> {
        self.lmap.keys()
    }

    pub fn domain_r(&self) -> impl Iterator<Item = &Name> {
        self.rmap.keys()
    }

    pub fn images(&self) -> impl Iterator<Item = &LbarTerm> {
        self.lmap.values().chain(self.rmap.values())
    }

    fn image_fv(&self) -> FreeVars {
        self.images()
            .map(LbarTerm::free_vars)
            .fold(FreeVars::default(), FreeVars::union)
    }

    fn touches(&self, t: &LbarTerm) -> bool {
        self.lmap.keys().any(|x| t.has_free_l(x)) || self.rmap.keys().any(|a| t.has_free_r(a))
    }

    pub fn apply(&self, t: &LbarTerm) -> LbarTerm {
        if self.is_empty() {
            return t.clone();
        }
        let mut names = HashSet::new();
        t.all_names(&mut names);
        for im in self.images() {
            im.all_names(&mut names);
        }
        let mut supply = FreshSupply::new(names);
        let fv = self.image_fv();
        self.go(t, &fv, &mut supply)
    }

    fn go(&self, t: &LbarTerm, fv: &FreeVars, supply: &mut FreshSupply) -> LbarTerm {
        if !self.touches(t) {
            return t.clone();
        }
        match t {
            LbarTerm::LVar(x) => self.lmap.get(x).cloned().unwrap_or_else(|| t.clone()),
            LbarTerm::RVar(a) => self.rmap.get(a).cloned().unwrap_or_else(|| t.clone()),
            LbarTerm::Command(a, b) => LbarTerm::command(self.go(a, fv, supply), self.go(b, fv, supply)),
            LbarTerm::RConsL(a, b) => LbarTerm::rcons(self.go(a, fv, supply), self.go(b, fv, supply)),
            LbarTerm::LConsR(a, b) => LbarTerm::lcons(self.go(a, fv, supply), self.go(b, fv, supply)),
            LbarTerm::LAbs(x, ty, body) | LbarTerm::RMu(x, ty, body) => {
                let (x2, body2) = self.under_l_binder(x, body, fv, supply);
                let body2 = Box::new(body2);
                match t {
                    LbarTerm::LAbs(..) => LbarTerm::LAbs(x2, ty.clone(), body2),
                    _ => LbarTerm::RMu(x2, ty.clone(), body2),
                }
            }
            LbarTerm::LMu(a, ty, body) | LbarTerm::RAbs(a, ty, body) => {
                let (a2, body2) = self.under_r_binder(a, body, fv, supply);
                let body2 = Box::new(body2);
                match t {
                    LbarTerm::LMu(..) => LbarTerm::LMu(a2, ty.clone(), body2),
                    _ => LbarTerm::RAbs(a2, ty.clone(), body2),
                }
            }
        }
    }

    fn under_l_binder(
        &self,
        x: &Name,
        body: &LbarTerm,
        fv: &FreeVars,
        supply: &mut FreshSupply,
    ) -> (Name, LbarTerm) {
        let mut inner = self.clone();
        inner.lmap.remove(x);
        if !inner.touches(body) {
            return (x.clone(), body.clone());
        }
        if fv.lvars.contains(x) {
            let x2 = supply.fresh(x);
            let renamed = LbarSubst::l(x, LbarTerm::LVar(x2.clone())).go(body, &FreeVars::default(), supply);
            (x2, inner.go(&renamed, fv, supply))
        } else {
            (x.clone(), inner.go(body, fv, supply))
        }
    }

    fn under_r_binder(
        &self,
        a: &Name,
        body: &LbarTerm,
        fv: &FreeVars,
        supply: &mut FreshSupply,
    ) -> (Name, LbarTerm) {
        let mut inner = self.clone();
        inner.rmap.remove(a);
        if !inner.touches(body) {
            return (a.clone(), body.clone());
        }
        if fv.rvars.contains(a) {
            let a2 = supply.fresh(a);
            let renamed = LbarSubst::r(a, LbarTerm::RVar(a2.clone())).go(body, &FreeVars::default(), supply);
            (a2, inner.go(&renamed, fv, supply))
        } else {
            (a.clone(), inner.go(body, fv, supply))
        }
    }
}

/// `t[x := v]`.
pub fn subst_l(t: &LbarTerm, x: &Name, v: &LbarTerm) -> LbarTerm {
    LbarSubst::l(x, v.clone()).apply(t)
}

/// `t[α := v]`.
pub fn subst_r(t: &LbarTerm, a: &Name, v: &LbarTerm) -> LbarTerm {
    LbarSubst::r(a, v.clone()).apply(t)
}
