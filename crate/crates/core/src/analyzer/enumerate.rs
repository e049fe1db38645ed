//! Exhaustive term enumeration up to a cxty bound, one term per α-class.
//!
//! Terms are generated namelessly: a variable position chooses among the
//! free pool and the binders in scope, and the binder at depth `d` (counted
//! per variable kind) is named `v{d}` for l-variables and `k{d}` for
//! r-variables. Distinct choices give distinct α-classes.

use std::collections::HashMap;

use crate::lbar::{LbarTerm, Sort};
use crate::lmu::LmuTerm;
use crate::names::Name;
use crate::typing::{LbarContexts, LbarType, LmuContext, LmuType};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Grammar {
    /// Full λ̄μμ̃ syntax.
    Lbar,
    /// λ̄μμ̃ variables, μ-binders and commands only.
    LbarRestricted,
    Lmu,
}

impl Grammar {
    pub fn parse(s: &str) -> Option<Self> {
        match s {
            "lbar" => Some(Grammar::Lbar),
            "lbar-restricted" | "restricted" => Some(Grammar::LbarRestricted),
            "lmu" => Some(Grammar::Lmu),
            _ => None,
        }
    }

    pub fn name(self) -> &'static str {
        match self {
            Grammar::Lbar => "lbar",
            Grammar::LbarRestricted => "lbar-restricted",
            Grammar::Lmu => "lmu",
        }
    }
}

/// Free variables available to the enumerator.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct VarPool {
    pub lvars: Vec<Name>,
    pub rvars: Vec<Name>,
}

impl Default for VarPool {
    /// `x, y` and `@a, @b`.
    fn default() -> Self {
        VarPool {
            lvars: vec![Name::new("x"), Name::new("y")],
            rvars: vec![Name::new("a"), Name::new("b")],
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct EnumSpec {
    pub grammar: Grammar,
    pub max_cxty: usize,
    pub pool: VarPool,
    /// Keep only typable terms, annotated in every possible way.
    pub typed: bool,
    pub atoms: Vec<Name>,
}

impl EnumSpec {
    pub fn new(grammar: Grammar, max_cxty: usize) -> Self {
        EnumSpec {
            grammar,
            max_cxty,
            pool: VarPool::default(),
            typed: false,
            atoms: vec![Name::new("A")],
        }
    }

    pub fn typed(mut self) -> Self {
        self.typed = true;
        self
    }

    pub fn describe(&self) -> String {
        format!(
            "{}{} cxty<={}",
            self.grammar.name(),
            if self.typed { " typed" } else { "" },
            self.max_cxty
        )
    }
}

fn lname(d: usize) -> Name {
    Name::new(&format!("v{d}"))
}

fn rname(d: usize) -> Name {
    Name::new(&format!("k{d}"))
}

fn splits(total: usize) -> impl Iterator<Item = (usize, usize)> {
    (1..total).map(move |i| (i, total - i))
}

type LbarMemo = HashMap<(Sort, usize, usize, usize), Vec<LbarTerm>>;

struct LbarGen<'a> {
    pool: &'a VarPool,
    restricted: bool,
    memo: LbarMemo,
}

impl LbarGen<'_> {
    /// Terms of `sort` and exactly `size` nodes under `dl` l-binders and
    /// `dr` r-binders.
    fn gen(&mut self, sort: Sort, size: usize, dl: usize, dr: usize) -> Vec<LbarTerm> {
        if let Some(v) = self.memo.get(&(sort, size, dl, dr)) {
            return v.clone();
        }
        let mut out = Vec::new();
        let boxed = Box::new;
        match sort {
            Sort::Command => {
                for (i, j) in splits(size - 1) {
                    for l in self.gen(Sort::LTerm, i, dl, dr) {
                        for r in self.gen(Sort::RTerm, j, dl, dr) {
                            out.push(LbarTerm::Command(boxed(l.clone()), boxed(r)));
                        }
                    }
                }
            }
            Sort::LTerm => {
                if size == 1 {
                    out.extend(self.pool.lvars.iter().cloned().chain((0..dl).map(lname)).map(LbarTerm::LVar));
                }
                if size >= 2 {
                    for c in self.gen(Sort::Command, size - 1, dl, dr + 1) {
                        out.push(LbarTerm::LMu(rname(dr), None, boxed(c)));
                    }
                    if !self.restricted {
                        for b in self.gen(Sort::LTerm, size - 1, dl + 1, dr) {
                            out.push(LbarTerm::LAbs(lname(dl), None, boxed(b)));
                        }
                        for (i, j) in splits(size - 1) {
                            for h in self.gen(Sort::RTerm, i, dl, dr) {
                                for t in self.gen(Sort::LTerm, j, dl, dr) {
                                    out.push(LbarTerm::RConsL(boxed(h.clone()), boxed(t)));
                                }
                            }
                        }
                    }
                }
            }
            Sort::RTerm => {
                if size == 1 {
                    out.extend(self.pool.rvars.iter().cloned().chain((0..dr).map(rname)).map(LbarTerm::RVar));
                }
                if size >= 2 {
                    for c in self.gen(Sort::Command, size - 1, dl + 1, dr) {
                        out.push(LbarTerm::RMu(lname(dl), None, boxed(c)));
                    }
                    if !self.restricted {
                        for b in self.gen(Sort::RTerm, size - 1, dl, dr + 1) {
                            out.push(LbarTerm::RAbs(rname(dr), None, boxed(b)));
                        }
                        for (i, j) in splits(size - 1) {
                            for h in self.gen(Sort::LTerm, i, dl, dr) {
                                for t in self.gen(Sort::RTerm, j, dl, dr) {
                                    out.push(LbarTerm::LConsR(boxed(h.clone()), boxed(t)));
                                }
                            }
                        }
                    }
                }
            }
        }
        self.memo.insert((sort, size, dl, dr), out.clone());
        out
    }
}

/// λ̄μμ̃ terms of the given sort with exactly `size` nodes.
pub fn lbar_terms_of_size(sort: Sort, size: usize, restricted: bool, pool: &VarPool) -> Vec<LbarTerm> {
    if size == 0 {
        return Vec::new();
    }
    LbarGen {
        pool,
        restricted,
        memo: HashMap::new(),
    }
    .gen(sort, size, 0, 0)
}

/// All λ̄μμ̃ terms of every sort with cxty at most `max`, by increasing size.
pub fn enumerate_lbar(max: usize, restricted: bool, pool: &VarPool) -> Vec<LbarTerm> {
    let mut g = LbarGen {
        pool,
        restricted,
        memo: HashMap::new(),
    };
    let mut out = Vec::new();
    for size in 1..=max {
        for sort in [Sort::Command, Sort::LTerm, Sort::RTerm] {
            out.extend(g.gen(sort, size, 0, 0));
        }
    }
    out
}

struct LmuGen<'a> {
    pool: &'a VarPool,
    memo: HashMap<(usize, usize, usize), Vec<LmuTerm>>,
}

impl LmuGen<'_> {
    fn gen(&mut self, size: usize, dl: usize, dr: usize) -> Vec<LmuTerm> {
        if let Some(v) = self.memo.get(&(size, dl, dr)) {
            return v.clone();
        }
        let mut out = Vec::new();
        if size == 1 {
            out.extend(self.pool.lvars.iter().cloned().chain((0..dl).map(lname)).map(LmuTerm::Var));
        } else {
            for b in self.gen(size - 1, dl + 1, dr) {
                out.push(LmuTerm::Abs(lname(dl), None, Box::new(b)));
            }
            for b in self.gen(size - 1, dl, dr + 1) {
                out.push(LmuTerm::Mu(rname(dr), None, Box::new(b)));
            }
            let names: Vec<Name> = self.pool.rvars.iter().cloned().chain((0..dr).map(rname)).collect();
            for b in self.gen(size - 1, dl, dr) {
                for a in &names {
                    out.push(LmuTerm::Named(a.clone(), Box::new(b.clone())));
                }
            }
            for (i, j) in splits(size - 1) {
                for f in self.gen(i, dl, dr) {
                    for a in self.gen(j, dl, dr) {
                        out.push(LmuTerm::app(f.clone(), a));
                    }
                }
            }
        }
        self.memo.insert((size, dl, dr), out.clone());
        out
    }
}

/// λμ terms with exactly `size` nodes.
pub fn lmu_terms_of_size(size: usize, pool: &VarPool) -> Vec<LmuTerm> {
    if size == 0 {
        return Vec::new();
    }
    LmuGen {
        pool,
        memo: HashMap::new(),
    }
    .gen(size, 0, 0)
}

/// All λμ terms with cxty at most `max`, by increasing size.
pub fn enumerate_lmu(max: usize, pool: &VarPool) -> Vec<LmuTerm> {
    let mut g = LmuGen {
        pool,
        memo: HashMap::new(),
    };
    (1..=max).flat_map(|s| g.gen(s, 0, 0)).collect()
}

/// `x:A, y:A -> A, @a:A, @b:A -> A`
pub fn default_lbar_contexts() -> LbarContexts {
    let a = LbarType::atom("A");
    LbarContexts::new()
        .with_l("x", a.clone())
        .with_l("y", LbarType::arrow(a.clone(), a.clone()))
        .with_r("a", a.clone())
        .with_r("b", LbarType::arrow(a.clone(), a))
}

/// `x:A, y:A -> A, @a:¬A, @b:¬(A -> A)`
pub fn default_lmu_context() -> LmuContext {
    let a = LmuType::atom("A");
    LmuContext::new()
        .with_var("x", a.clone())
        .with_var("y", LmuType::arrow(a.clone(), a.clone()))
        .with_covar("a", a.clone())
        .with_covar("b", LmuType::arrow(a.clone(), a))
}

/// Annotation candidates: `A, A -> A, A - A` for atoms `{A}`.
pub fn lbar_type_pool(atoms: &[Name]) -> Vec<LbarType> {
    LbarType::enumerate(atoms, 3)
}

/// Annotation candidates: the types of `lg ≤ 3`, including ⊥.
pub fn lmu_type_pool(atoms: &[Name]) -> Vec<LmuType> {
    LmuType::enumerate(atoms, 3)
}

/// Every annotation of the binders of `t` with pool types under which `t`
/// typechecks in `ctx`, together with the resulting type (`None` for
/// commands).
pub fn annotate_lbar(t: &LbarTerm, ctx: &LbarContexts, pool: &[LbarType]) -> Vec<(LbarTerm, Option<LbarType>)> {
    let boxed = Box::new;
    match t {
        LbarTerm::LVar(x) => ctx.gamma.get(x).map(|a| (t.clone(), Some(a.clone()))).into_iter().collect(),
        LbarTerm::RVar(a) => ctx.delta.get(a).map(|ty| (t.clone(), Some(ty.clone()))).into_iter().collect(),
        LbarTerm::LAbs(x, _, b) => pool
            .iter()
            .flat_map(|a| {
                annotate_lbar(b, &ctx.clone().with_l(x.as_str(), a.clone()), pool)
                    .into_iter()
                    .map(move |(b2, tb)| {
                        let ty = LbarType::arrow(a.clone(), tb.expect("l-term"));
                        (LbarTerm::LAbs(x.clone(), Some(a.clone()), boxed(b2)), Some(ty))
                    })
            })
            .collect(),
        LbarTerm::RAbs(al, _, b) => pool
            .iter()
            .flat_map(|bt| {
                annotate_lbar(b, &ctx.clone().with_r(al.as_str(), bt.clone()), pool)
                    .into_iter()
                    .map(move |(b2, tb)| {
                        let ty = LbarType::minus(tb.expect("r-term"), bt.clone());
                        (LbarTerm::RAbs(al.clone(), Some(bt.clone()), boxed(b2)), Some(ty))
                    })
            })
            .collect(),
        LbarTerm::LMu(al, _, c) => pool
            .iter()
            .flat_map(|a| {
                annotate_lbar(c, &ctx.clone().with_r(al.as_str(), a.clone()), pool)
                    .into_iter()
                    .map(move |(c2, _)| (LbarTerm::LMu(al.clone(), Some(a.clone()), boxed(c2)), Some(a.clone())))
            })
            .collect(),
        LbarTerm::RMu(x, _, c) => pool
            .iter()
            .flat_map(|a| {
                annotate_lbar(c, &ctx.clone().with_l(x.as_str(), a.clone()), pool)
                    .into_iter()
                    .map(move |(c2, _)| (LbarTerm::RMu(x.clone(), Some(a.clone()), boxed(c2)), Some(a.clone())))
            })
            .collect(),
        LbarTerm::Command(l, r) | LbarTerm::LConsR(l, r) | LbarTerm::RConsL(l, r) => {
            let left = annotate_lbar(l, ctx, pool);
            let right = annotate_lbar(r, ctx, pool);
            let mut out = Vec::new();
            for (l2, tl) in &left {
                for (r2, tr) in &right {
                    let (tl, tr) = (tl.clone().expect("term"), tr.clone().expect("term"));
                    let (l2, r2) = (boxed(l2.clone()), boxed(r2.clone()));
                    match t {
                        LbarTerm::Command(..) if tl == tr => out.push((LbarTerm::Command(l2, r2), None)),
                        LbarTerm::LConsR(..) => out.push((LbarTerm::LConsR(l2, r2), Some(LbarType::arrow(tl, tr)))),
                        // t_r.t_l : A − B with t_l : A and the head t_r : B.
                        LbarTerm::RConsL(..) => out.push((LbarTerm::RConsL(l2, r2), Some(LbarType::minus(tr, tl)))),
                        _ => {}
                    }
                }
            }
            out
        }
    }
}

/// The λμ analogue of [`annotate_lbar`].
pub fn annotate_lmu(t: &LmuTerm, ctx: &LmuContext, pool: &[LmuType]) -> Vec<(LmuTerm, LmuType)> {
    match t {
        LmuTerm::Var(x) => ctx.vars.get(x).map(|a| (t.clone(), a.clone())).into_iter().collect(),
        LmuTerm::Abs(x, _, b) => pool
            .iter()
            .flat_map(|a| {
                annotate_lmu(b, &ctx.clone().with_var(x.as_str(), a.clone()), pool)
                    .into_iter()
                    .map(move |(b2, tb)| {
                        (
                            LmuTerm::Abs(x.clone(), Some(a.clone()), Box::new(b2)),
                            LmuType::arrow(a.clone(), tb),
                        )
                    })
            })
            .collect(),
        LmuTerm::Mu(al, _, b) => pool
            .iter()
            .flat_map(|a| {
                annotate_lmu(b, &ctx.clone().with_covar(al.as_str(), a.clone()), pool)
                    .into_iter()
                    .filter(|(_, tb)| *tb == LmuType::Bottom)
                    .map(move |(b2, _)| (LmuTerm::Mu(al.clone(), Some(a.clone()), Box::new(b2)), a.clone()))
            })
            .collect(),
        LmuTerm::Named(al, b) => match ctx.covars.get(al) {
            None => Vec::new(),
            Some(want) => annotate_lmu(b, ctx, pool)
                .into_iter()
                .filter(|(_, tb)| tb == want)
                .map(|(b2, _)| (LmuTerm::Named(al.clone(), Box::new(b2)), LmuType::Bottom))
                .collect(),
        },
        LmuTerm::App(f, a) => {
            let fs = annotate_lmu(f, ctx, pool);
            let args = annotate_lmu(a, ctx, pool);
            let mut out = Vec::new();
            for (f2, tf) in &fs {
                let LmuType::Arrow(dom, cod) = tf else { continue };
                for (a2, ta) in &args {
                    if **dom == *ta {
                        out.push((LmuTerm::app(f2.clone(), a2.clone()), (**cod).clone()));
                    }
                }
            }
            out
        }
    }
}

/// Typable λ̄μμ̃ terms (every valid annotation) with cxty at most `max`.
pub fn enumerate_typed_lbar(max: usize, restricted: bool, spec_atoms: &[Name]) -> Vec<LbarTerm> {
    let pool = lbar_type_pool(spec_atoms);
    let ctx = default_lbar_contexts();
    enumerate_lbar(max, restricted, &VarPool::default())
        .iter()
        .flat_map(|t| annotate_lbar(t, &ctx, &pool).into_iter().map(|(t, _)| t))
        .collect()
}

/// Typable λμ terms (every valid annotation) with cxty at most `max`.
pub fn enumerate_typed_lmu(max: usize, spec_atoms: &[Name]) -> Vec<LmuTerm> {
    let pool = lmu_type_pool(spec_atoms);
    let ctx = default_lmu_context();
    enumerate_lmu(max, &VarPool::default())
        .iter()
        .flat_map(|t| annotate_lmu(t, &ctx, &pool).into_iter().map(|(t, _)| t))
        .collect()
}
