//! λ̄μμ̃ terms: the AST, free variables, measures, canonical forms and
//! printing.

use std::collections::HashSet;
use std::fmt;

pub use crate::names::FreeVars;
use crate::names::Name;
use crate::typing::LbarType;

/// The three syntactic categories.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum Sort {
    Command,
    LTerm,
    RTerm,
}

impl fmt::Display for Sort {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            Sort::Command => "command",
            Sort::LTerm => "l-term",
            Sort::RTerm => "r-term",
        })
    }
}

/// A λ̄μμ̃ term of any sort.
///
/// Child order (used by positions): `Command(l, r)` is `[0, 1]`,
/// `RConsL(head, tail)` and `LConsR(head, tail)` are `[0, 1]`, binders have
/// their body at `0`.
///
/// Derived equality is syntactic; use [`LbarTerm::alpha_eq`] for
/// α-equivalence.
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LbarTerm {
    /// `⟨t_l , t_r⟩`
    Command(Box<LbarTerm>, Box<LbarTerm>),
    LVar(Name),
    /// `λx t_l`
    LAbs(Name, Option<LbarType>, Box<LbarTerm>),
    /// `μα c`, an l-term binding an r-variable.
    LMu(Name, Option<LbarType>, Box<LbarTerm>),
    /// `t_r.t_l`, an l-term.
    RConsL(Box<LbarTerm>, Box<LbarTerm>),
    RVar(Name),
    /// `λα t_r`
    RAbs(Name, Option<LbarType>, Box<LbarTerm>),
    /// `μx c`, an r-term binding an l-variable.
    RMu(Name, Option<LbarType>, Box<LbarTerm>),
    /// `t_l.t_r`, an r-term.
    LConsR(Box<LbarTerm>, Box<LbarTerm>),
}

/// Nameless form: bound variables become indices counted separately for
/// each variable kind (0 is the innermost binder of that kind).
#[derive(Clone, PartialEq, Eq, Hash, Debug)]
pub enum LbarKey {
    Command(Box<LbarKey>, Box<LbarKey>),
    LFree(Name),
    LBound(usize),
    LAbs(Option<LbarType>, Box<LbarKey>),
    LMu(Option<LbarType>, Box<LbarKey>),
    RConsL(Box<LbarKey>, Box<LbarKey>),
    RFree(Name),
    RBound(usize),
    RAbs(Option<LbarType>, Box<LbarKey>),
    RMu(Option<LbarType>, Box<LbarKey>),
    LConsR(Box<LbarKey>, Box<LbarKey>),
}

impl LbarTerm {
    pub fn command(l: LbarTerm, r: LbarTerm) -> Self {
        LbarTerm::Command(Box::new(l), Box::new(r))
    }

    pub fn lvar(x: &str) -> Self {
        LbarTerm::LVar(Name::new(x))
    }

    pub fn rvar(a: &str) -> Self {
        LbarTerm::RVar(Name::new(a))
    }

    pub fn lmu(a: &str, c: LbarTerm) -> Self {
        LbarTerm::LMu(Name::new(a), None, Box::new(c))
    }

    pub fn rmu(x: &str, c: LbarTerm) -> Self {
        LbarTerm::RMu(Name::new(x), None, Box::new(c))
    }

    pub fn labs(x: &str, body: LbarTerm) -> Self {
        LbarTerm::LAbs(Name::new(x), None, Box::new(body))
    }

    pub fn rabs(a: &str, body: LbarTerm) -> Self {
        LbarTerm::RAbs(Name::new(a), None, Box::new(body))
    }

    /// `head.tail` with an r-term head: an l-term.
    pub fn rcons(head: LbarTerm, tail: LbarTerm) -> Self {
        LbarTerm::RConsL(Box::new(head), Box::new(tail))
    }

    /// `head.tail` with an l-term head: an r-term.
    pub fn lcons(head: LbarTerm, tail: LbarTerm) -> Self {
        LbarTerm::LConsR(Box::new(head), Box::new(tail))
    }

    pub fn sort(&self) -> Sort {
        match self {
            LbarTerm::Command(..) => Sort::Command,
            LbarTerm::LVar(_) | LbarTerm::LAbs(..) | LbarTerm::LMu(..) | LbarTerm::RConsL(..) => {
                Sort::LTerm
            }
            LbarTerm::RVar(_) | LbarTerm::RAbs(..) | LbarTerm::RMu(..) | LbarTerm::LConsR(..) => {
                Sort::RTerm
            }
        }
    }

    /// Checks that every child has the sort the grammar requires, returning
    /// the position of the first offending child.
    pub fn check_sorts(&self) -> Result<(), Vec<usize>> {
        fn go(t: &LbarTerm, path: &mut Vec<usize>) -> Result<(), Vec<usize>> {
            let expected: &[Sort] = match t {
                LbarTerm::Command(..) => &[Sort::LTerm, Sort::RTerm],
                LbarTerm::LVar(_) | LbarTerm::RVar(_) => &[],
                LbarTerm::LAbs(..) => &[Sort::LTerm],
                LbarTerm::RAbs(..) => &[Sort::RTerm],
                LbarTerm::LMu(..) | LbarTerm::RMu(..) => &[Sort::Command],
                LbarTerm::RConsL(..) => &[Sort::RTerm, Sort::LTerm],
                LbarTerm::LConsR(..) => &[Sort::LTerm, Sort::RTerm],
            };
            for (i, (child, want)) in t.children().into_iter().zip(expected).enumerate() {
                path.push(i);
                if child.sort() != *want {
                    return Err(path.clone());
                }
                go(child, path)?;
                path.pop();
            }
            Ok(())
        }
        go(self, &mut Vec::new())
    }

    pub fn children(&self) -> Vec<&LbarTerm> {
        match self {
            LbarTerm::LVar(_) | LbarTerm::RVar(_) => vec![],
            LbarTerm::LAbs(_, _, b) | LbarTerm::LMu(_, _, b) | LbarTerm::RAbs(_, _, b) | LbarTerm::RMu(_, _, b) => {
                vec![b]
            }
            LbarTerm::Command(a, b) | LbarTerm::RConsL(a, b) | LbarTerm::LConsR(a, b) => vec![a, b],
        }
    }

    fn child_mut(&mut self, i: usize) -> Option<&mut LbarTerm> {
        match (self, i) {
            (LbarTerm::LAbs(_, _, b) | LbarTerm::LMu(_, _, b) | LbarTerm::RAbs(_, _, b) | LbarTerm::RMu(_, _, b), 0) => {
                Some(b)
            }
            (LbarTerm::Command(a, _) | LbarTerm::RConsL(a, _) | LbarTerm::LConsR(a, _), 0) => Some(a),
            (LbarTerm::Command(_, b) | LbarTerm::RConsL(_, b) | LbarTerm::LConsR(_, b), 1) => Some(b),
            _ => None,
        }
    }

    pub fn subterm(&self, path: &[usize]) -> Option<&LbarTerm> {
        let mut cur = self;
        for &i in path {
            cur = *cur.children().get(i)?;
        }
        Some(cur)
    }

    /// Replaces the subterm at `path`; `None` if the path does not exist.
    pub fn replace_at(&self, path: &[usize], new: LbarTerm) -> Option<LbarTerm> {
        let mut out = self.clone();
        let mut cur = &mut out;
        for &i in path {
            cur = cur.child_mut(i)?;
        }
        *cur = new;
        Some(out)
    }

    /// `false` exactly for variables.
    pub fn is_proper(&self) -> bool {
        !matches!(self, LbarTerm::LVar(_) | LbarTerm::RVar(_))
    }

    /// Number of AST nodes: every variable occurrence, binder, command and
    /// cons node counts one. Annotations are not counted.
    pub fn cxty(&self) -> usize {
        1 + self.children().into_iter().map(LbarTerm::cxty).sum::<usize>()
    }

    pub fn free_vars(&self) -> FreeVars {
        let mut fv = FreeVars::default();
        self.collect_free(&mut Vec::new(), &mut Vec::new(), &mut fv);
        fv
    }

    fn collect_free(&self, lb: &mut Vec<Name>, rb: &mut Vec<Name>, fv: &mut FreeVars) {
        match self {
            LbarTerm::LVar(x) => {
                if !lb.contains(x) {
                    fv.lvars.insert(x.clone());
                }
            }
            LbarTerm::RVar(a) => {
                if !rb.contains(a) {
                    fv.rvars.insert(a.clone());
                }
            }
            LbarTerm::LAbs(x, _, b) | LbarTerm::RMu(x, _, b) => {
                lb.push(x.clone());
                b.collect_free(lb, rb, fv);
                lb.pop();
            }
            LbarTerm::LMu(a, _, b) | LbarTerm::RAbs(a, _, b) => {
                rb.push(a.clone());
                b.collect_free(lb, rb, fv);
                rb.pop();
            }
            LbarTerm::Command(a, b) | LbarTerm::RConsL(a, b) | LbarTerm::LConsR(a, b) => {
                a.collect_free(lb, rb, fv);
                b.collect_free(lb, rb, fv);
            }
        }
    }

    pub fn has_free_l(&self, x: &Name) -> bool {
        self.count_free_l(x) > 0
    }

    pub fn has_free_r(&self, a: &Name) -> bool {
        self.count_free_r(a) > 0
    }

    /// Number of free occurrences of the l-variable `x`.
    pub fn count_free_l(&self, x: &Name) -> usize {
        match self {
            LbarTerm::LVar(y) => usize::from(y == x),
            LbarTerm::RVar(_) => 0,
            LbarTerm::LAbs(y, _, b) | LbarTerm::RMu(y, _, b) => {
                if y == x {
                    0
                } else {
                    b.count_free_l(x)
                }
            }
            LbarTerm::LMu(_, _, b) | LbarTerm::RAbs(_, _, b) => b.count_free_l(x),
            LbarTerm::Command(a, b) | LbarTerm::RConsL(a, b) | LbarTerm::LConsR(a, b) => {
                a.count_free_l(x) + b.count_free_l(x)
            }
        }
    }

    /// Number of free occurrences of the r-variable `a`.
    pub fn count_free_r(&self, a: &Name) -> usize {
        match self {
            LbarTerm::RVar(b) => usize::from(b == a),
            LbarTerm::LVar(_) => 0,
            LbarTerm::LMu(b, _, body) | LbarTerm::RAbs(b, _, body) => {
                if b == a {
                    0
                } else {
                    body.count_free_r(a)
                }
            }
            LbarTerm::LAbs(_, _, body) | LbarTerm::RMu(_, _, body) => body.count_free_r(a),
            LbarTerm::Command(l, r) | LbarTerm::RConsL(l, r) | LbarTerm::LConsR(l, r) => {
                l.count_free_r(a) + r.count_free_r(a)
            }
        }
    }

    /// Every variable name occurring anywhere (free, bound or binding).
    pub fn all_names(&self, out: &mut HashSet<Name>) {
        match self {
            LbarTerm::LVar(x) | LbarTerm::RVar(x) => {
                out.insert(x.clone());
            }
            LbarTerm::LAbs(x, _, b) | LbarTerm::LMu(x, _, b) | LbarTerm::RAbs(x, _, b) | LbarTerm::RMu(x, _, b) => {
                out.insert(x.clone());
                b.all_names(out);
            }
            LbarTerm::Command(a, b) | LbarTerm::RConsL(a, b) | LbarTerm::LConsR(a, b) => {
                a.all_names(out);
                b.all_names(out);
            }
        }
    }

    /// Number of binders (λ or μ, either kind).
    pub fn binder_count(&self) -> usize {
        let here = usize::from(matches!(
            self,
            LbarTerm::LAbs(..) | LbarTerm::LMu(..) | LbarTerm::RAbs(..) | LbarTerm::RMu(..)
        ));
        here + self.children().into_iter().map(LbarTerm::binder_count).sum::<usize>()
    }

    /// Canonical nameless form.
    pub fn key(&self) -> LbarKey {
        self.key_in(&mut Vec::new(), &mut Vec::new())
    }

    fn key_in(&self, lb: &mut Vec<Name>, rb: &mut Vec<Name>) -> LbarKey {
        fn idx(stack: &[Name], x: &Name) -> Option<usize> {
            stack.iter().rev().position(|y| y == x)
        }
        let bx = |k: LbarKey| Box::new(k);
        match self {
            LbarTerm::LVar(x) => match idx(lb, x) {
                Some(i) => LbarKey::LBound(i),
                None => LbarKey::LFree(x.clone()),
            },
            LbarTerm::RVar(a) => match idx(rb, a) {
                Some(i) => LbarKey::RBound(i),
                None => LbarKey::RFree(a.clone()),
            },
            LbarTerm::LAbs(x, ty, b) => {
                lb.push(x.clone());
                let k = b.key_in(lb, rb);
                lb.pop();
                LbarKey::LAbs(ty.clone(), bx(k))
            }
            LbarTerm::RMu(x, ty, b) => {
                lb.push(x.clone());
                let k = b.key_in(lb, rb);
                lb.pop();
                LbarKey::RMu(ty.clone(), bx(k))
            }
            LbarTerm::LMu(a, ty, b) => {
                rb.push(a.clone());
                let k = b.key_in(lb, rb);
                rb.pop();
                LbarKey::LMu(ty.clone(), bx(k))
            }
            LbarTerm::RAbs(a, ty, b) => {
                rb.push(a.clone());
                let k = b.key_in(lb, rb);
                rb.pop();
                LbarKey::RAbs(ty.clone(), bx(k))
            }
            LbarTerm::Command(l, r) => LbarKey::Command(bx(l.key_in(lb, rb)), bx(r.key_in(lb, rb))),
            LbarTerm::RConsL(h, t) => LbarKey::RConsL(bx(h.key_in(lb, rb)), bx(t.key_in(lb, rb))),
            LbarTerm::LConsR(h, t) => LbarKey::LConsR(bx(h.key_in(lb, rb)), bx(t.key_in(lb, rb))),
        }
    }

    /// α-equivalence. Terms of different sorts are never α-equivalent.
    pub fn alpha_eq(&self, other: &LbarTerm) -> bool {
        self.key() == other.key()
    }

    /// Removes every binder annotation.
    pub fn erase(&self) -> LbarTerm {
        match self {
            LbarTerm::LVar(_) | LbarTerm::RVar(_) => self.clone(),
            LbarTerm::LAbs(x, _, b) => LbarTerm::LAbs(x.clone(), None, Box::new(b.erase())),
            LbarTerm::LMu(x, _, b) => LbarTerm::LMu(x.clone(), None, Box::new(b.erase())),
            LbarTerm::RAbs(x, _, b) => LbarTerm::RAbs(x.clone(), None, Box::new(b.erase())),
            LbarTerm::RMu(x, _, b) => LbarTerm::RMu(x.clone(), None, Box::new(b.erase())),
            LbarTerm::Command(a, b) => LbarTerm::command(a.erase(), b.erase()),
            LbarTerm::RConsL(a, b) => LbarTerm::rcons(a.erase(), b.erase()),
            LbarTerm::LConsR(a, b) => LbarTerm::lcons(a.erase(), b.erase()),
        }
    }
}

fn write_binder(f: &mut fmt::Formatter<'_>, head: &str, ty: &Option<LbarType>) -> fmt::Result {
    match ty {
        Some(t) => write!(f, "{head}:{t}. "),
        None => write!(f, "{head}. "),
    }
}

impl fmt::Display for LbarTerm {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LbarTerm::Command(l, r) => write!(f, "< {l} | {r} >"),
            LbarTerm::LVar(x) => write!(f, "{x}"),
            LbarTerm::RVar(a) => write!(f, "@{a}"),
            LbarTerm::LAbs(x, ty, b) => {
                write_binder(f, &format!("\\{x}"), ty)?;
                write!(f, "{b}")
            }
            LbarTerm::RAbs(a, ty, b) => {
                write_binder(f, &format!("\\@{a}"), ty)?;
                write!(f, "{b}")
            }
            LbarTerm::LMu(a, ty, c) => {
                write_binder(f, &format!("mu @{a}"), ty)?;
                write!(f, "{c}")
            }
            LbarTerm::RMu(x, ty, c) => {
                write_binder(f, &format!("mu {x}"), ty)?;
                write!(f, "{c}")
            }
            LbarTerm::RConsL(h, t) | LbarTerm::LConsR(h, t) => {
                // λ bodies extend rightwards and `::` associates to the right,
                // so only those heads need parentheses.
                match **h {
                    LbarTerm::LAbs(..) | LbarTerm::RAbs(..) | LbarTerm::RConsL(..) | LbarTerm::LConsR(..) => {
                        write!(f, "({h}) :: {t}")
                    }
                    _ => write!(f, "{h} :: {t}"),
                }
            }
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn witness() -> LbarTerm {
        // < mu @a. < x | @b > | mu y. < x | @a > >
        LbarTerm::command(
            LbarTerm::lmu("a", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("b"))),
            LbarTerm::rmu("y", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a"))),
        )
    }

    #[test]
    fn printing() {
        let c = LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a"));
        assert_eq!(c.to_string(), "< x | @a >");
        assert_eq!(LbarTerm::lmu("a", c).to_string(), "mu @a. < x | @a >");
        assert_eq!(
            witness().to_string(),
            "< mu @a. < x | @b > | mu y. < x | @a > >"
        );
        let nested = LbarTerm::lcons(
            LbarTerm::labs("x", LbarTerm::lvar("x")),
            LbarTerm::lcons(LbarTerm::lvar("y"), LbarTerm::rvar("b")),
        );
        assert_eq!(nested.to_string(), "(\\x. x) :: y :: @b");
    }

    #[test]
    fn free_variables() {
        let c = LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a"));
        let fv = c.free_vars();
        assert_eq!(fv.lvars, [Name::new("x")].into());
        assert_eq!(fv.rvars, [Name::new("a")].into());
        let fv = LbarTerm::lmu("a", c.clone()).free_vars();
        assert_eq!(fv.lvars, [Name::new("x")].into());
        assert!(fv.rvars.is_empty());
        let fv = LbarTerm::rmu("y", c).free_vars();
        assert_eq!(fv.lvars, [Name::new("x")].into());
        assert_eq!(fv.rvars, [Name::new("a")].into());
    }

    #[test]
    fn cxty_is_node_count() {
        assert_eq!(LbarTerm::lvar("x").cxty(), 1);
        let c = LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a"));
        assert_eq!(c.cxty(), 3);
        assert_eq!(LbarTerm::lmu("a", c).cxty(), 4);
    }

    #[test]
    fn proper_terms() {
        assert!(!LbarTerm::lvar("x").is_proper());
        assert!(!LbarTerm::rvar("a").is_proper());
        assert!(LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a")).is_proper());
    }

    #[test]
    fn alpha_equivalence() {
        let a = LbarTerm::lmu("a", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a")));
        let b = LbarTerm::lmu("b", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("b")));
        assert!(a.alpha_eq(&b));
        let c = LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a"));
        let d = LbarTerm::command(LbarTerm::lvar("y"), LbarTerm::rvar("a"));
        assert!(!c.alpha_eq(&d));
        // lvar and rvar namespaces are separate: μx binds x, not @x.
        let e = LbarTerm::rmu("a", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a")));
        let f = LbarTerm::rmu("z", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a")));
        assert!(e.alpha_eq(&f));
    }

    #[test]
    fn sort_checking_reports_position() {
        let bad = LbarTerm::command(LbarTerm::rvar("a"), LbarTerm::lvar("x"));
        assert_eq!(bad.check_sorts(), Err(vec![0]));
        assert_eq!(witness().check_sorts(), Ok(()));
    }

    #[test]
    fn occurrence_counting_ignores_rebound() {
        // mu @a. < mu @a. < x | @a > | @a >: the inner @a is rebound.
        let inner = LbarTerm::lmu("a", LbarTerm::command(LbarTerm::lvar("x"), LbarTerm::rvar("a")));
        let body = LbarTerm::command(inner, LbarTerm::rvar("a"));
        assert_eq!(body.count_free_r(&Name::new("a")), 1);
    }
}
