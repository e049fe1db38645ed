//! Natural-deduction typing for λμ terms (Church style).
//!
//! Rules: `ax`, `->i`, `->e`, `bot_e` (`Γ ⊢ μα:A M : A` from `Γ, α:¬A ⊢ M : ⊥`)
//! and `bot_i` (`Γ ⊢ (α M) : ⊥` from `α:¬A` and `Γ ⊢ M : A`).

use std::fmt;

use super::context::LmuContext;
use super::derivation::{Derivation, TypeError, TypeErrorKind};
use super::types::LmuType;
use crate::lmu::LmuTerm;
use crate::names::Name;

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct LmuJudgment {
    pub ctx: LmuContext,
    pub term: LmuTerm,
    pub ty: LmuType,
}

impl fmt::Display for LmuJudgment {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "{} ⊢ {} : {}", self.ctx, self.term, self.ty)
    }
}

pub type LmuDerivation = Derivation<LmuJudgment>;

fn missing(path: &[usize], v: String) -> TypeError {
    TypeError::at(path, TypeErrorKind::MissingAnnotation(v))
}

/// The type of `t` in `ctx`, without building a derivation.
pub fn lmu_type_of(t: &LmuTerm, ctx: &LmuContext) -> Result<LmuType, TypeError> {
    fn go(t: &LmuTerm, ctx: &mut LmuContext, path: &mut Vec<usize>) -> Result<LmuType, TypeError> {
        match t {
            LmuTerm::Var(x) => ctx
                .vars
                .get(x)
                .cloned()
                .ok_or_else(|| TypeError::at(path, TypeErrorKind::Unbound(x.to_string()))),
            LmuTerm::Abs(x, ty, b) => {
                let a = ty.clone().ok_or_else(|| missing(path, x.to_string()))?;
                let old = ctx.vars.insert(x.clone(), a.clone());
                path.push(0);
                let r = go(b, ctx, path);
                path.pop();
                restore(&mut ctx.vars, x, old);
                Ok(LmuType::arrow(a, r?))
            }
            LmuTerm::App(f, arg) => {
                path.push(0);
                let tf = go(f, ctx, path)?;
                path.pop();
                let LmuType::Arrow(dom, cod) = tf else {
                    path.push(0);
                    let e = TypeError::at(path, TypeErrorKind::NotAnArrow(tf.to_string()));
                    path.pop();
                    return Err(e);
                };
                path.push(1);
                let ta = go(arg, ctx, path)?;
                let res = if ta == *dom {
                    Ok(*cod)
                } else {
                    Err(TypeError::at(
                        path,
                        TypeErrorKind::Clash {
                            expected: dom.to_string(),
                            found: ta.to_string(),
                        },
                    ))
                };
                path.pop();
                res
            }
            LmuTerm::Mu(a, ty, b) => {
                let at = ty.clone().ok_or_else(|| missing(path, format!("@{a}")))?;
                let old = ctx.covars.insert(a.clone(), at.clone());
                path.push(0);
                let r = go(b, ctx, path);
                let res = match r {
                    Ok(LmuType::Bottom) => Ok(at),
                    Ok(other) => Err(TypeError::at(path, TypeErrorKind::NotBottom(other.to_string()))),
                    Err(e) => Err(e),
                };
                path.pop();
                restore(&mut ctx.covars, a, old);
                res
            }
            LmuTerm::Named(a, b) => {
                let want = ctx
                    .covars
                    .get(a)
                    .cloned()
                    .ok_or_else(|| TypeError::at(path, TypeErrorKind::Unbound(format!("@{a}"))))?;
                path.push(0);
                let tb = go(b, ctx, path)?;
                let res = if tb == want {
                    Ok(LmuType::Bottom)
                } else {
                    Err(TypeError::at(
                        path,
                        TypeErrorKind::Clash {
                            expected: want.to_string(),
                            found: tb.to_string(),
                        },
                    ))
                };
                path.pop();
                res
            }
        }
    }
    go(t, &mut ctx.clone(), &mut Vec::new())
}

fn restore(map: &mut std::collections::BTreeMap<Name, LmuType>, k: &Name, old: Option<LmuType>) {
    match old {
        Some(v) => {
            map.insert(k.clone(), v);
        }
        None => {
            map.remove(k);
        }
    }
}

/// Typechecks `t` and returns its type with the (unique) derivation.
pub fn typecheck_lmu(t: &LmuTerm, ctx: &LmuContext) -> Result<(LmuType, LmuDerivation), TypeError> {
    lmu_type_of(t, ctx)?;
    let d = derive(t, ctx);
    Ok((d.conclusion.ty.clone(), d))
}

/// Builds the derivation of a term already known to typecheck.
fn derive(t: &LmuTerm, ctx: &LmuContext) -> LmuDerivation {
    let node = |rule, ty, premises, note| Derivation {
        rule,
        conclusion: LmuJudgment {
            ctx: ctx.clone(),
            term: t.clone(),
            ty,
        },
        premises,
        note,
    };
    match t {
        LmuTerm::Var(x) => node("ax", ctx.vars[x].clone(), vec![], None),
        LmuTerm::Abs(x, ty, b) => {
            let a = ty.clone().expect("checked");
            let note = ctx.vars.get(x).map(|old| format!("{x}:{a} shadows {x}:{old}"));
            let inner = ctx.clone().with_var(x.as_str(), a.clone());
            let p = derive(b, &inner);
            let res = LmuType::arrow(a, p.conclusion.ty.clone());
            node("->i", res, vec![p], note)
        }
        LmuTerm::App(f, a) => {
            let pf = derive(f, ctx);
            let pa = derive(a, ctx);
            let LmuType::Arrow(_, cod) = pf.conclusion.ty.clone() else { unreachable!() };
            node("->e", *cod, vec![pf, pa], None)
        }
        LmuTerm::Mu(a, ty, b) => {
            let at = ty.clone().expect("checked");
            let note = ctx.covars.get(a).map(|old| {
                format!("@{a}:{} shadows @{a}:{}", LmuType::neg(at.clone()), LmuType::neg(old.clone()))
            });
            let inner = ctx.clone().with_covar(a.as_str(), at.clone());
            node("bot_e", at, vec![derive(b, &inner)], note)
        }
        LmuTerm::Named(_, b) => node("bot_i", LmuType::Bottom, vec![derive(b, ctx)], None),
    }
}

/// Re-checks every node of a derivation against the rule schemata.
pub fn verify_lmu(d: &LmuDerivation) -> Result<(), String> {
    let j = &d.conclusion;
    let prem = |i: usize| -> Result<&LmuJudgment, String> {
        d.premises
            .get(i)
            .map(|p| &p.conclusion)
            .ok_or_else(|| format!("{}: missing premise {i}", d.rule))
    };
    let fail = |why: &str| Err(format!("{} at `{}`: {why}", d.rule, j.term));
    let arity = match (d.rule, &j.term) {
        ("ax", LmuTerm::Var(x)) => {
            if j.ctx.vars.get(x) != Some(&j.ty) {
                return fail("axiom does not match the context");
            }
            0
        }
        ("->i", LmuTerm::Abs(x, Some(a), b)) => {
            let p = prem(0)?;
            if p.term != **b || p.ctx != j.ctx.clone().with_var(x.as_str(), a.clone()) {
                return fail("premise does not extend the context with the bound variable");
            }
            if j.ty != LmuType::arrow(a.clone(), p.ty.clone()) {
                return fail("conclusion type is not A -> B");
            }
            1
        }
        ("->e", LmuTerm::App(f, a)) => {
            let (pf, pa) = (prem(0)?, prem(1)?);
            if pf.term != **f || pa.term != **a || pf.ctx != j.ctx || pa.ctx != j.ctx {
                return fail("premises do not match the application");
            }
            if pf.ty != LmuType::arrow(pa.ty.clone(), j.ty.clone()) {
                return fail("function type does not match");
            }
            2
        }
        ("bot_e", LmuTerm::Mu(a, Some(at), b)) => {
            let p = prem(0)?;
            if p.term != **b || p.ctx != j.ctx.clone().with_covar(a.as_str(), at.clone()) {
                return fail("premise does not declare the μ-variable");
            }
            if p.ty != LmuType::Bottom || j.ty != *at {
                return fail("types do not match");
            }
            1
        }
        ("bot_i", LmuTerm::Named(a, b)) => {
            let p = prem(0)?;
            if p.term != **b || p.ctx != j.ctx {
                return fail("premise does not match");
            }
            if j.ctx.covars.get(a) != Some(&p.ty) || j.ty != LmuType::Bottom {
                return fail("named term does not match the μ-variable's type");
            }
            1
        }
        _ => return fail("rule does not fit the term"),
    };
    if d.premises.len() != arity {
        return fail("wrong number of premises");
    }
    d.premises.iter().try_for_each(verify_lmu)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::lmu::parse_lmu;

    fn a() -> LmuType {
        LmuType::atom("A")
    }

    #[test]
    fn identity() {
        let (ty, d) = typecheck_lmu(&parse_lmu("\\x:A. x").unwrap(), &LmuContext::new()).unwrap();
        assert_eq!(ty, LmuType::arrow(a(), a()));
        assert_eq!(d.rule, "->i");
        verify_lmu(&d).unwrap();
    }

    #[test]
    fn mu_over_named() {
        let ctx = LmuContext::new().with_var("x", a());
        let (ty, d) = typecheck_lmu(&parse_lmu("mu @a:A. [@a] x").unwrap(), &ctx).unwrap();
        assert_eq!(ty, a());
        assert_eq!(d.rule, "bot_e");
        assert_eq!(d.premises[0].rule, "bot_i");
        verify_lmu(&d).unwrap();
    }

    #[test]
    fn self_application_needs_an_arrow() {
        let ctx = LmuContext::new().with_var("x", a());
        let err = typecheck_lmu(&parse_lmu("(x x)").unwrap(), &ctx).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::NotAnArrow(_)));
        assert_eq!(err.position, vec![0]);
    }

    #[test]
    fn errors() {
        let ctx = LmuContext::new();
        let err = lmu_type_of(&parse_lmu("\\x. x").unwrap(), &ctx).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::MissingAnnotation(_)));
        let err = lmu_type_of(&parse_lmu("\\x:A. y").unwrap(), &ctx).unwrap_err();
        assert_eq!(err.position, vec![0]);
        let err = lmu_type_of(&parse_lmu("mu @a:A. x").unwrap(), &ctx.clone().with_var("x", a())).unwrap_err();
        assert!(matches!(err.kind, TypeErrorKind::NotBottom(_)));
    }

    #[test]
    fn shadowing_is_recorded() {
        let ctx = LmuContext::new().with_var("x", LmuType::Bottom);
        let (_, d) = typecheck_lmu(&parse_lmu("\\x:A. x").unwrap(), &ctx).unwrap();
        assert!(d.note.is_some());
        verify_lmu(&d).unwrap();
    }

    #[test]
    fn tampered_derivation_fails_verification() {
        let ctx = LmuContext::new().with_var("x", a());
        let (_, mut d) = typecheck_lmu(&parse_lmu("mu @a:A. [@a] x").unwrap(), &ctx).unwrap();
        d.conclusion.ty = LmuType::Bottom;
        assert!(verify_lmu(&d).is_err());
        let json = d.to_json();
        assert_eq!(json["rule"], "bot_e");
        assert_eq!(json["premises"][0]["rule"], "bot_i");
    }
}
