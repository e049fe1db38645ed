//! Per-calculus glue: parsing, defaults and typechecking behind one trait.

use serde_json::{json, Value};

use symcalc::lbar::{parse_any, Lbar, LbarRule, LbarTerm};
use symcalc::lmu::{parse_lmu, Lmu, LmuRule, LmuTerm};
use symcalc::rewrite::{Calculus, RuleSet};
use symcalc::typing::{lbar_type_of, typecheck_lbar, typecheck_lmu, LbarContexts, LmuContext};

use crate::CliError;

/// A successful typecheck, ready for rendering.
pub struct Checked {
    /// `A` for terms, `c : (Γ ⊢ Δ)` for λ̄μμ̃ commands.
    pub summary: String,
    pub derivation: String,
    pub json: Value,
}

pub trait Front: Calculus + Sized {
    const NAME: &'static str;

    fn parse_term(src: &str) -> Result<Self::Term, CliError>;

    fn term_from_json(v: &Value) -> Result<Self::Term, CliError>;

    /// The calculus with `rules`; `ctx` types the free variables where the
    /// reduction rules need it.
    fn make(rules: RuleSet<Self::Rule>, ctx: &str) -> Result<Self, CliError>;

    fn default_rules() -> RuleSet<Self::Rule>;

    fn typecheck(t: &Self::Term, ctx: &str) -> Result<Checked, CliError>;
}

fn position_error(src: &str, pos: usize, message: String) -> CliError {
    let pos = pos.min(src.len());
    let line = src.lines().next().unwrap_or("");
    let caret = if pos <= line.len() {
        format!("\n  {line}\n  {}^", " ".repeat(src[..pos].chars().count()))
    } else {
        String::new()
    };
    CliError::user(format!("{message}{caret}"))
}

impl Front for Lbar {
    const NAME: &'static str = "lbar";

    fn parse_term(src: &str) -> Result<LbarTerm, CliError> {
        parse_any(src.trim()).map_err(|e| position_error(src.trim(), e.pos(), e.to_string()))
    }

    fn term_from_json(v: &Value) -> Result<LbarTerm, CliError> {
        LbarTerm::from_json(v).map_err(|e| CliError::user(e.to_string()))
    }

    fn make(rules: RuleSet<LbarRule>, _ctx: &str) -> Result<Self, CliError> {
        Ok(Lbar::new(rules))
    }

    fn default_rules() -> RuleSet<LbarRule> {
        LbarRule::logical()
    }

    fn typecheck(t: &LbarTerm, ctx: &str) -> Result<Checked, CliError> {
        let ctx = LbarContexts::parse(ctx).map_err(|e| CliError::user(e.to_string()))?;
        let d = typecheck_lbar(t, &ctx).map_err(|e| CliError::user(e.to_string()))?;
        let ty = lbar_type_of(t, &ctx).map_err(|e| CliError::user(e.to_string()))?;
        let summary = match &ty {
            Some(a) => a.to_string(),
            None => format!("c : ({} ⊢ {})", ctx.gamma_string(), ctx.delta_string()),
        };
        Ok(Checked {
            json: json!({"type": ty.map(|a| a.to_string()), "derivation": d.to_json()}),
            summary,
            derivation: d.render(),
        })
    }
}

impl Front for Lmu {
    const NAME: &'static str = "lmu";

    fn parse_term(src: &str) -> Result<LmuTerm, CliError> {
        parse_lmu(src.trim()).map_err(|e| position_error(src.trim(), e.pos, e.to_string()))
    }

    fn term_from_json(v: &Value) -> Result<LmuTerm, CliError> {
        LmuTerm::from_json(v).map_err(|e| CliError::user(e.to_string()))
    }

    fn make(rules: RuleSet<LmuRule>, ctx: &str) -> Result<Self, CliError> {
        let calc = Lmu::new(rules);
        if ctx.trim().is_empty() {
            return Ok(calc);
        }
        let ctx = LmuContext::parse(ctx).map_err(|e| CliError::user(e.to_string()))?;
        Ok(calc.with_context(ctx))
    }

    fn default_rules() -> RuleSet<LmuRule> {
        LmuRule::beta_mu_mu_prime()
    }

    fn typecheck(t: &LmuTerm, ctx: &str) -> Result<Checked, CliError> {
        let ctx = LmuContext::parse(ctx).map_err(|e| CliError::user(e.to_string()))?;
        let (ty, d) = typecheck_lmu(t, &ctx).map_err(|e| CliError::user(e.to_string()))?;
        Ok(Checked {
            summary: ty.to_string(),
            derivation: d.render(),
            json: json!({"type": ty.to_string(), "derivation": d.to_json()}),
        })
    }
}
