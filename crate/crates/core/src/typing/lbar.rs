//! Sequent-style typing for λ̄μμ̃ terms (Church style).
//!
//! Judgments: `c : (Γ ⊢ Δ)` for commands, `Γ ⊢ t_l : A, Δ` for l-terms and
//! `Γ, t_r : A ⊢ Δ` for r-terms. Binder annotations give the type of the
//! bound variable: `λx:A`, `μ@a:A`, `μx:A`, and `λ@a:B` for `λα t_r : A − B`.

use std::fmt;

use super::context::LbarContexts;
use super::derivation::{Derivation, TypeError, TypeErrorKind};
use super::types::LbarType;
use crate::lbar::{LbarTerm, Sort};

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LbarJudgment {
    pub ctx: LbarContexts,
    pub term: LbarTerm,
    /// `None` for commands.
    pub ty: Option<LbarType>,
}

fn join(parts: &[String]) -> String {
    parts.iter().filter(|p| !p.is_empty()).cloned().collect::<Vec<_>>().join(", ")
}

impl fmt::Display for LbarJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let (g, d) = (self.ctx.gamma_string(), self.ctx.delta_string());
        match (&self.ty, self.term.sort()) {
            (Some(ty), Sort::LTerm) => {
                let rhs = join(&[format!("{} : {ty}", self.term), d]);
                write!(f, "{g} ⊢ {rhs}")
            }
            (Some(ty), _) => {
                let lhs = join(&[g, format!("{} : {ty}", self.term)]);
                write!(f, "{lhs} ⊢ {d}")
            }
            (None, _) => write!(f, "{} : ({g} ⊢ {d})", self.term),
        }
    }
}

pub type LbarDerivation = Derivation<LbarJudgment>;

fn err(path: &[usize], kind: TypeErrorKind) -> TypeError {
    TypeError::at(path, kind)
}

fn clash(path: &[usize], expected: impl fmt::Display, found: impl fmt::Display) -> TypeError {
    err(
        path,
        TypeErrorKind::Clash {
            expected: expected.to_string(),
            found: found.to_string(),
        },
    )
}

/// The type of an l- or r-term (`None` for a well-typed command).
pub fn lbar_type_of(t: &LbarTerm, ctx: &LbarContexts) -> Result<Option<LbarType>, TypeError> {
    if let Err(pos) = t.check_sorts() {
        let found = t.subterm(&pos).map(|s| s.sort().to_string()).unwrap_or_default();
        return Err(clash(&pos, "a well-sorted subterm", found));
    }
    synth(t, &mut ctx.clone(), &mut Vec::new())
}

fn synth(t: &LbarTerm, ctx: &mut LbarContexts, path: &mut Vec<usize>) -> Result<Option<LbarType>, TypeError> {
    Ok(match t {
        LbarTerm::LVar(x) => Some(
            ctx.gamma
                .get(x)
                .cloned()
                .ok_or_else(|| err(path, TypeErrorKind::Unbound(x.to_string())))?,
        ),
        LbarTerm::RVar(a) => Some(
            ctx.delta
                .get(a)
                .cloned()
                .ok_or_else(|| err(path, TypeErrorKind::Unbound(format!("@{a}"))))?,
        ),
        LbarTerm::LAbs(x, ty, b) => {
            let a = ty.clone().ok_or_else(|| err(path, TypeErrorKind::MissingAnnotation(x.to_string())))?;
            let old = ctx.gamma.insert(x.clone(), a.clone());
            let r = sub(0, b, ctx, path);
            restore(&mut ctx.gamma, x, old);
            Some(LbarType::arrow(a, r?.expect("l-term")))
        }
        LbarTerm::RAbs(al, ty, b) => {
            let bt = ty.clone().ok_or_else(|| err(path, TypeErrorKind::MissingAnnotation(format!("@{al}"))))?;
            let old = ctx.delta.insert(al.clone(), bt.clone());
            let r = sub(0, b, ctx, path);
            restore(&mut ctx.delta, al, old);
            Some(LbarType::minus(r?.expect("r-term"), bt))
        }
        LbarTerm::LMu(al, ty, c) => {
            let a = ty.clone().ok_or_else(|| err(path, TypeErrorKind::MissingAnnotation(format!("@{al}"))))?;
            let old = ctx.delta.insert(al.clone(), a.clone());
            let r = sub(0, c, ctx, path);
            restore(&mut ctx.delta, al, old);
            r?;
            Some(a)
        }
        LbarTerm::RMu(x, ty, c) => {
            let a = ty.clone().ok_or_else(|| err(path, TypeErrorKind::MissingAnnotation(x.to_string())))?;
            let old = ctx.gamma.insert(x.clone(), a.clone());
            let r = sub(0, c, ctx, path);
            restore(&mut ctx.gamma, x, old);
            r?;
            Some(a)
        }
        LbarTerm::LConsR(h, tl) => {
            let a = sub(0, h, ctx, path)?.expect("l-term");
            let b = sub(1, tl, ctx, path)?.expect("r-term");
            Some(LbarType::arrow(a, b))
        }
        LbarTerm::RConsL(h, tl) => {
            let b = sub(0, h, ctx, path)?.expect("r-term");
            let a = sub(1, tl, ctx, path)?.expect("l-term");
            Some(LbarType::minus(a, b))
        }
        LbarTerm::Command(l, r) => {
            let a = sub(0, l, ctx, path)?.expect("l-term");
            let b = sub(1, r, ctx, path)?.expect("r-term");
            if a != b {
                path.push(1);
                let e = clash(path, &a, &b);
                path.pop();
                return Err(e);
            }
            None
        }
    })
}

fn sub(i: usize, c: &LbarTerm, ctx: &mut LbarContexts, path: &mut Vec<usize>) -> Result<Option<LbarType>, TypeError> {
    path.push(i);
    let r = synth(c, ctx, path);
    path.pop();
    r
}

fn restore(
    map: &mut std::collections::BTreeMap<crate::names::Name, LbarType>,
    k: &crate::names::Name,
    old: Option<LbarType>,
) {
    match old {
        Some(v) => {
            map.insert(k.clone(), v);
        }
        None => {
            map.remove(k);
        }
    }
}

/// Typechecks `t` and returns its derivation.
pub fn typecheck_lbar(t: &LbarTerm, ctx: &LbarContexts) -> Result<LbarDerivation, TypeError> {
    lbar_type_of(t, ctx)?;
    Ok(derive(t, ctx))
}

fn derive(t: &LbarTerm, ctx: &LbarContexts) -> LbarDerivation {
    let node = |rule, ty, premises, note| Derivation {
        rule,
        conclusion: LbarJudgment {
            ctx: ctx.clone(),
            term: t.clone(),
            ty,
        },
        premises,
        note,
    };
    let ty_of = |d: &LbarDerivation| d.conclusion.ty.clone().expect("term judgment");
    let shadow_l = |x: &crate::names::Name, a: &LbarType| {
        ctx.gamma.get(x).map(|old| format!("{x}:{a} shadows {x}:{old}"))
    };
    let shadow_r = |x: &crate::names::Name, a: &LbarType| {
        ctx.delta.get(x).map(|old| format!("@{x}:{a} shadows @{x}:{old}"))
    };
    match t {
        LbarTerm::LVar(x) => node("ax_l", Some(ctx.gamma[x].clone()), vec![], None),
        LbarTerm::RVar(a) => node("ax_r", Some(ctx.delta[a].clone()), vec![], None),
        LbarTerm::LAbs(x, ty, b) => {
            let a = ty.clone().expect("checked");
            let p = derive(b, &ctx.clone().with_l(x.as_str(), a.clone()));
            let res = LbarType::arrow(a.clone(), ty_of(&p));
            node("lam", Some(res), vec![p], shadow_l(x, &a))
        }
        LbarTerm::RAbs(al, ty, b) => {
            let bt = ty.clone().expect("checked");
            let p = derive(b, &ctx.clone().with_r(al.as_str(), bt.clone()));
            let res = LbarType::minus(ty_of(&p), bt.clone());
            node("lam_r", Some(res), vec![p], shadow_r(al, &bt))
        }
        LbarTerm::LMu(al, ty, c) => {
            let a = ty.clone().expect("checked");
            let p = derive(c, &ctx.clone().with_r(al.as_str(), a.clone()));
            node("mu", Some(a.clone()), vec![p], shadow_r(al, &a))
        }
        LbarTerm::RMu(x, ty, c) => {
            let a = ty.clone().expect("checked");
            let p = derive(c, &ctx.clone().with_l(x.as_str(), a.clone()));
            node("mutilde", Some(a.clone()), vec![p], shadow_l(x, &a))
        }
        LbarTerm::LConsR(h, tl) => {
            let (ph, pt) = (derive(h, ctx), derive(tl, ctx));
            let res = LbarType::arrow(ty_of(&ph), ty_of(&pt));
            node("cons_r", Some(res), vec![ph, pt], None)
        }
        LbarTerm::RConsL(h, tl) => {
            let (ph, pt) = (derive(h, ctx), derive(tl, ctx));
            let res = LbarType::minus(ty_of(&pt), ty_of(&ph));
            node("cons_l", Some(res), vec![ph, pt], None)
        }
        LbarTerm::Command(l, r) => node("cut", None, vec![derive(l, ctx), derive(r, ctx)], None),
    }
}

/// Re-checks every node of a derivation against the rule schemata.
pub fn verify_lbar(d: &LbarDerivation) -> Result<(), String> {
    let j = &d.conclusion;
    let fail = |why: &str| Err(format!("{} at `{}`: {why}", d.rule, j.term));
    let prem = |i: usize| d.premises.get(i).map(|p| &p.conclusion);
    let same_ctx = |p: &LbarJudgment| p.ctx == j.ctx;
    let check = |ok: bool, why: &str| if ok { Ok(()) } else { fail(why) };
    let arity = match (d.rule, &j.term) {
        ("ax_l", LbarTerm::LVar(x)) => {
            check(j.ty.is_some() && j.ctx.gamma.get(x) == j.ty.as_ref(), "axiom does not match Γ")?;
            0
        }
        ("ax_r", LbarTerm::RVar(a)) => {
            check(j.ty.is_some() && j.ctx.delta.get(a) == j.ty.as_ref(), "axiom does not match Δ")?;
            0
        }
        ("lam", LbarTerm::LAbs(x, Some(a), b)) => {
            let Some(p) = prem(0) else { return fail("missing premise") };
            check(p.term == **b && p.ctx == j.ctx.clone().with_l(x.as_str(), a.clone()), "bad premise")?;
            let want = p.ty.clone().map(|bt| LbarType::arrow(a.clone(), bt));
            check(want.is_some() && j.ty == want, "conclusion is not A -> B")?;
            1
        }
        ("lam_r", LbarTerm::RAbs(al, Some(bt), b)) => {
            let Some(p) = prem(0) else { return fail("missing premise") };
            check(p.term == **b && p.ctx == j.ctx.clone().with_r(al.as_str(), bt.clone()), "bad premise")?;
            let want = p.ty.clone().map(|at| LbarType::minus(at, bt.clone()));
            check(want.is_some() && j.ty == want, "conclusion is not A - B")?;
            1
        }
        ("mu", LbarTerm::LMu(al, Some(a), c)) => {
            let Some(p) = prem(0) else { return fail("missing premise") };
            check(p.term == **c && p.ty.is_none(), "premise is not the command")?;
            check(p.ctx == j.ctx.clone().with_r(al.as_str(), a.clone()), "premise does not declare the μ-variable")?;
            check(j.ty.as_ref() == Some(a), "conclusion type differs from the annotation")?;
            1
        }
        ("mutilde", LbarTerm::RMu(x, Some(a), c)) => {
            let Some(p) = prem(0) else { return fail("missing premise") };
            check(p.term == **c && p.ty.is_none(), "premise is not the command")?;
            check(p.ctx == j.ctx.clone().with_l(x.as_str(), a.clone()), "premise does not declare the variable")?;
            check(j.ty.as_ref() == Some(a), "conclusion type differs from the annotation")?;
            1
        }
        ("cons_r", LbarTerm::LConsR(h, tl)) | ("cons_l", LbarTerm::RConsL(h, tl)) => {
            let (Some(ph), Some(pt)) = (prem(0), prem(1)) else { return fail("missing premise") };
            check(ph.term == **h && pt.term == **tl && same_ctx(ph) && same_ctx(pt), "bad premises")?;
            let (Some(th), Some(tt)) = (ph.ty.clone(), pt.ty.clone()) else { return fail("untyped premise") };
            let want = if d.rule == "cons_r" {
                LbarType::arrow(th, tt)
            } else {
                LbarType::minus(tt, th)
            };
            check(j.ty.as_ref() == Some(&want), "conclusion type does not match the premises")?;
            2
        }
        ("cut", LbarTerm::Command(l, r)) => {
            let (Some(pl), Some(pr)) = (prem(0), prem(1)) else { return fail("missing premise") };
            check(pl.term == **l && pr.term == **r && same_ctx(pl) && same_ctx(pr), "bad premises")?;
            check(pl.ty.is_some() && pl.ty == pr.ty && j.ty.is_none(), "cut formulas differ")?;
            2
        }
        _ => return fail("rule does not fit the term"),
    };
    if d.premises.len() != arity {
        return fail("wrong number of premises");
    }
    d.premises.iter().try_for_each(verify_lbar)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lbar::parse_any;

    fn a() -> LbarType {
        LbarType::atom("A")
    }

    #[test]
    fn cut_over_axioms() {
        let ctx = LbarContexts::new().with_l("x", a()).with_r("a", a());
        let d = typecheck_lbar(&parse_any("< x | @a >").unwrap(), &ctx).unwrap();
        assert_eq!(d.rule, "cut");
        assert_eq!(d.premises[0].rule, "ax_l");
        assert_eq!(d.premises[1].rule, "ax_r");
        assert_eq!(d.conclusion.to_string(), "< x | @a > : (x:A ⊢ @a:A)");
        verify_lbar(&d).unwrap();
    }

    #[test]
    fn identity_is_an_arrow() {
        let d = typecheck_lbar(&parse_any("\\x:A. x").unwrap(), &LbarContexts::new()).unwrap();
        assert_eq!(d.conclusion.ty, Some(LbarType::arrow(a(), a())));
        assert_eq!(d.premises[0].conclusion.to_string(), "x:A ⊢ x : A");
        verify_lbar(&d).unwrap();
    }

    #[test]
    fn clash() {
        let ctx = LbarContexts::new().with_l("x", a()).with_r("a", LbarType::atom("B"));
        let e = typecheck_lbar(&parse_any("< x | @a >").unwrap(), &ctx).unwrap_err();
        assert!(matches!(e.kind, TypeErrorKind::Clash { .. }));
        assert_eq!(e.position, vec![1]);
    }

    #[test]
    fn every_rule() {
        let ctx = LbarContexts::new().with_l("x", a()).with_r("a", a()).with_r("b", a());
        for (src, ty) in [
            ("mu @c:A. < x | @c >", Some("A")),
            ("mu y:A. < y | @a >", Some("A")),
            ("x :: @a", Some("A -> A")),
            ("@a :: x", Some("A - A")),
            ("\\@c:A. @a", Some("A - A")),
            ("< @b :: x | \\@c:A. @a >", None),
            ("< \\y:A. y | x :: @a >", None),
        ] {
            let t = parse_any(src).unwrap();
            let d = typecheck_lbar(&t, &ctx).unwrap_or_else(|e| panic!("{src}: {e}"));
            assert_eq!(d.conclusion.ty, ty.map(|s| LbarType::parse(s).unwrap()), "{src}");
            verify_lbar(&d).unwrap();
        }
        let d = typecheck_lbar(&parse_any("mu y:A. < y | @a >").unwrap(), &ctx).unwrap();
        assert_eq!(d.conclusion.to_string(), "x:A, mu y:A. < y | @a > : A ⊢ @a:A, @b:A");
    }

    #[test]
    fn missing_annotation_and_unbound() {
        let ctx = LbarContexts::new();
        let e = lbar_type_of(&parse_any("\\x. x").unwrap(), &ctx).unwrap_err();
        assert!(matches!(e.kind, TypeErrorKind::MissingAnnotation(_)));
        let e = lbar_type_of(&parse_any("< x | @a >").unwrap(), &ctx).unwrap_err();
        assert_eq!(e.position, vec![0]);
    }

    #[test]
    fn shadowing_note() {
        let ctx = LbarContexts::new().with_l("x", a()).with_r("a", LbarType::atom("B"));
        let d = typecheck_lbar(&parse_any("mu @a:A. < x | @a >").unwrap(), &ctx).unwrap();
        assert!(d.note.as_deref().unwrap().contains("shadows"));
        verify_lbar(&d).unwrap();
    }

    #[test]
    fn tampering_is_caught() {
        let ctx = LbarContexts::new().with_l("x", a()).with_r("a", a());
        let mut d = typecheck_lbar(&parse_any("< x | @a >").unwrap(), &ctx).unwrap();
        d.premises[1].conclusion.ty = Some(LbarType::atom("B"));
        assert!(verify_lbar(&d).is_err());
    }
}
