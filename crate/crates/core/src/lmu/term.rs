//! Symmetric λμ terms.

use std::collections::HashSet;
use std::fmt;

use crate::names::{FreeVars, Name};
use crate::typing::LmuType;

/// A λμ term. μ-variables are applied with `Named`, written `[@a] M`.
///
/// Children: `Abs`, `Mu` and `Named` have their body at `0`; `App(f, a)` has
/// `f` at `0` and `a` at `1`.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LmuTerm {
    Var(Name),
    Abs(Name, Option<LmuType>, Box<LmuTerm>),
    App(Box<LmuTerm>, Box<LmuTerm>),
    /// `μα M`; the annotation `A` declares `α : ¬A`.
    Mu(Name, Option<LmuType>, Box<LmuTerm>),
    /// `(α M)`
    Named(Name, Box<LmuTerm>),
}

#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LmuKey {
    Free(Name),
    Bound(usize),
    Abs(Option<LmuType>, Box<LmuKey>),
    App(Box<LmuKey>, Box<LmuKey>),
    Mu(Option<LmuType>, Box<LmuKey>),
    NamedFree(Name, Box<LmuKey>),
    NamedBound(usize, Box<LmuKey>),
}

impl LmuTerm {
    pub fn var(x: &str) -> Self {
        LmuTerm::Var(Name::new(x))
    }

    pub fn abs(x: &str, body: LmuTerm) -> Self {
        LmuTerm::Abs(Name::new(x), None, Box::new(body))
    }

    pub fn app(f: LmuTerm, a: LmuTerm) -> Self {
        LmuTerm::App(Box::new(f), Box::new(a))
    }

    pub fn mu(a: &str, body: LmuTerm) -> Self {
        LmuTerm::Mu(Name::new(a), None, Box::new(body))
    }

    pub fn named(a: &str, body: LmuTerm) -> Self {
        LmuTerm::Named(Name::new(a), Box::new(body))
    }

    /// `(h a₁ … aₙ)`
    pub fn apps(h: LmuTerm, args: impl IntoIterator<Item = LmuTerm>) -> Self {
        args.into_iter().fold(h, LmuTerm::app)
    }

    pub fn children(&self) -> Vec<&LmuTerm> {
        match self {
            LmuTerm::Var(_) => vec![],
            LmuTerm::Abs(_, _, b) | LmuTerm::Mu(_, _, b) | LmuTerm::Named(_, b) => vec![b],
            LmuTerm::App(f, a) => vec![f, a],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut LmuTerm> {
        match (self, i) {
            (LmuTerm::Abs(_, _, b) | LmuTerm::Mu(_, _, b) | LmuTerm::Named(_, b), 0) => Some(b),
            (LmuTerm::App(f, _), 0) => Some(f),
            (LmuTerm::App(_, a), 1) => Some(a),
            _ => None,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&LmuTerm> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    pub fn replace_at(&self, path: &[usize], new: LmuTerm) -> Option<LmuTerm> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        *cur = new;
        Some(out)
    }

    pub fn is_proper(&self) -> bool {
        !matches!(self, LmuTerm::Var(_))
    }

    /// Node count; a `Named` node counts one plus its body.
    pub fn cxty(&self) -> usize {
        1 + self.children().into_iter().map(LmuTerm::cxty).sum::<usize>()
    }

    pub fn free_vars(&self) -> FreeVars {
        fn go(t: &LmuTerm, lb: &mut Vec<Name>, rb: &mut Vec<Name>, fv: &mut FreeVars) {
            match t {
                LmuTerm::Var(x) => {
                    if !lb.contains(x) {
                        fv.lvars.insert(x.clone());
                    }
                }
                LmuTerm::Abs(x, _, b) => {
                    lb.push(x.clone());
                    go(b, lb, rb, fv);
                    lb.pop();
                }
                LmuTerm::Mu(a, _, b) => {
                    rb.push(a.clone());
                    go(b, lb, rb, fv);
                    rb.pop();
                }
                LmuTerm::Named(a, b) => {
                    if !rb.contains(a) {
                        fv.rvars.insert(a.clone());
                    }
                    go(b, lb, rb, fv);
                }
                LmuTerm::App(f, a) => {
                    go(f, lb, rb, fv);
                    go(a, lb, rb, fv);
                }
            }
        }
        let mut fv = FreeVars::default();
        go(self, &mut Vec::new(), &mut Vec::new(), &mut fv);
        fv
    }

    pub fn has_free_l(&self, x: &Name) -> bool {
        match self {
            LmuTerm::Var(y) => y == x,
            LmuTerm::Abs(y, _, b) => y != x && b.has_free_l(x),
            LmuTerm::Mu(_, _, b) | LmuTerm::Named(_, b) => b.has_free_l(x),
            LmuTerm::App(f, a) => f.has_free_l(x) || a.has_free_l(x),
        }
    }

    pub fn has_free_r(&self, a: &Name) -> bool {
        match self {
            LmuTerm::Var(_) => false,
            LmuTerm::Abs(_, _, b) => b.has_free_r(a),
            LmuTerm::Mu(b, _, body) => b != a && body.has_free_r(a),
            LmuTerm::Named(b, body) => b == a || body.has_free_r(a),
            LmuTerm::App(f, x) => f.has_free_r(a) || x.has_free_r(a),
        }
    }

    pub fn all_names(&self, out: &mut HashSet<Name>) {
        match self {
            LmuTerm::Var(x) => {
                out.insert(x.clone());
            }
            LmuTerm::Abs(x, _, b) | LmuTerm::Mu(x, _, b) | LmuTerm::Named(x, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
            LmuTerm::App(f, a) => {
                f.all_names(out);
                a.all_names(out);
            }
        }
    }

    pub fn key(&self) -> LmuKey {
        fn idx(stack: &[Name], x: &Name) -> Option<usize> {
            stack.iter().rev().position(|y| y == x)
        }
        fn go(t: &LmuTerm, lb: &mut Vec<Name>, rb: &mut Vec<Name>) -> LmuKey {
            match t {
                LmuTerm::Var(x) => match idx(lb, x) {
                    Some(i) => LmuKey::Bound(i),
                    None => LmuKey::Free(x.clone()),
                },
                LmuTerm::Abs(x, ty, b) => {
                    lb.push(x.clone());
                    let k = go(b, lb, rb);
                    lb.pop();
                    LmuKey::Abs(ty.clone(), Box::new(k))
                }
                LmuTerm::Mu(a, ty, b) => {
                    rb.push(a.clone());
                    let k = go(b, lb, rb);
                    rb.pop();
                    LmuKey::Mu(ty.clone(), Box::new(k))
                }
                LmuTerm::Named(a, b) => {
                    let k = Box::new(go(b, lb, rb));
                    match idx(rb, a) {
                        Some(i) => LmuKey::NamedBound(i, k),
                        None => LmuKey::NamedFree(a.clone(), k),
                    }
                }
                LmuTerm::App(f, a) => LmuKey::App(Box::new(go(f, lb, rb)), Box::new(go(a, lb, rb))),
            }
        }
        go(self, &mut Vec::new(), &mut Vec::new())
    }

    pub fn alpha_eq(&self, other: &LmuTerm) -> bool {
        self.key() == other.key()
    }

    pub fn erase(&self) -> LmuTerm {
        match self {
            LmuTerm::Var(_) => self.clone(),
            LmuTerm::Abs(x, _, b) => LmuTerm::Abs(x.clone(), None, Box::new(b.erase())),
            LmuTerm::Mu(a, _, b) => LmuTerm::Mu(a.clone(), None, Box::new(b.erase())),
            LmuTerm::Named(a, b) => LmuTerm::Named(a.clone(), Box::new(b.erase())),
            LmuTerm::App(f, a) => LmuTerm::app(f.erase(), a.erase()),
        }
    }

    /// Splits `(h a₁ … aₙ)` into `h` and the arguments.
    pub fn spine(&self) -> (&LmuTerm, Vec<&LmuTerm>) {
        let mut args = Vec::new();
        let mut cur = self;
        while let LmuTerm::App(f, a) = cur {
            args.push(&**a);
            cur = f;
        }
        args.reverse();
        (cur, args)
    }
}

impl fmt::Display for LmuTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LmuTerm::Var(x) => write!(f, "{x}"),
            LmuTerm::Abs(x, None, b) => write!(f, "\\{x}. {b}"),
            LmuTerm::Abs(x, Some(t), b) => write!(f, "\\{x}:{t}. {b}"),
            LmuTerm::App(g, a) => write!(f, "({g} {a})"),
            LmuTerm::Mu(a, None, b) => write!(f, "mu @{a}. {b}"),
            LmuTerm::Mu(a, Some(t), b) => write!(f, "mu @{a}:{t}. {b}"),
            LmuTerm::Named(a, b) => write!(f, "[@{a}] {b}"),
        }
    }
}
