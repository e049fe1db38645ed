//! Typing contexts.

use std::collections::BTreeMap;
use std::fmt;

use thiserror::Error;

use super::types::{LbarType, LmuType};
use crate::names::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ContextParseError {
    #[error("context entry `{0}` is not of the form `x:A` or `@a:A`")]
    Entry(String),
    #[error("context entry `{entry}`: {message}")]
    Type { entry: String, message: String },
}

/// Splits `x:A, @a:B -> C` into `(is_r, name, type text)` entries.
fn entries(src: &str) -> Result<Vec<(bool, Name, String)>, ContextParseError> {
    let mut out = Vec::new();
    for raw in src.split(',').map(str::trim).filter(|e| !e.is_empty()) {
        let (name, ty) = raw.split_once(':').ok_or_else(|| ContextParseError::Entry(raw.into()))?;
        let name = name.trim();
        let (is_r, bare) = match name.strip_prefix('@') {
            Some(b) => (true, b),
            None => (false, name),
        };
        let ok = bare.chars().next().is_some_and(|c| c.is_ascii_lowercase())
            && bare.chars().all(|c| c.is_ascii_alphanumeric() || c == '_');
        if !ok {
            return Err(ContextParseError::Entry(raw.into()));
        }
        out.push((is_r, Name::new(bare), ty.trim().to_string()));
    }
    Ok(out)
}

/// Γ for l-variables and Δ for r-variables.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LbarContexts {
    pub gamma: BTreeMap<Name, LbarType>,
    pub delta: BTreeMap<Name, LbarType>,
}

impl LbarContexts {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_l(mut self, x: &str, ty: LbarType) -> Self {
        self.gamma.insert(Name::new(x), ty);
        self
    }

    pub fn with_r(mut self, a: &str, ty: LbarType) -> Self {
        self.delta.insert(Name::new(a), ty);
        self
    }

    /// Parses `x:A, @a:A -> A`.
    pub fn parse(src: &str) -> Result<Self, ContextParseError> {
        let mut ctx = Self::new();
        for (is_r, name, ty) in entries(src)? {
            let parsed = LbarType::parse(&ty).map_err(|e| ContextParseError::Type {
                entry: format!("{name}:{ty}"),
                message: e.to_string(),
            })?;
            if is_r {
                ctx.delta.insert(name, parsed);
            } else {
                ctx.gamma.insert(name, parsed);
            }
        }
        Ok(ctx)
    }
}

impl LbarContexts {
    pub fn gamma_string(&self) -> String {
        let parts: Vec<String> = self.gamma.iter().map(|(n, t)| format!("{n}:{t}")).collect();
        parts.join(", ")
    }

    pub fn delta_string(&self) -> String {
        let parts: Vec<String> = self.delta.iter().map(|(n, t)| format!("@{n}:{t}")).collect();
        parts.join(", ")
    }
}

/// λμ context: `x : A` for λ-variables and `α : ¬A` for μ-variables.
///
/// `covars` maps `α` to the `A` of its declared type `¬A`.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash)]
pub struct LmuContext {
    pub vars: BTreeMap<Name, LmuType>,
    pub covars: BTreeMap<Name, LmuType>,
}

impl LmuContext {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn with_var(mut self, x: &str, ty: LmuType) -> Self {
        self.vars.insert(Name::new(x), ty);
        self
    }

    /// Declares `α : ¬ty`.
    pub fn with_covar(mut self, a: &str, ty: LmuType) -> Self {
        self.covars.insert(Name::new(a), ty);
        self
    }

    /// Parses `x:A, @a:A -> bot`; μ-variable entries must be negations.
    pub fn parse(src: &str) -> Result<Self, ContextParseError> {
        let mut ctx = Self::new();
        for (is_r, name, ty) in entries(src)? {
            let entry = format!("{}{name}:{ty}", if is_r { "@" } else { "" });
            let parsed = LmuType::parse(&ty).map_err(|e| ContextParseError::Type {
                entry: entry.clone(),
                message: e.to_string(),
            })?;
            if is_r {
                match parsed {
                    LmuType::Arrow(a, b) if *b == LmuType::Bottom => {
                        ctx.covars.insert(name, *a);
                    }
                    _ => {
                        return Err(ContextParseError::Type {
                            entry,
                            message: "a μ-variable must have a type of the form A -> bot".into(),
                        })
                    }
                }
            } else {
                ctx.vars.insert(name, parsed);
            }
        }
        Ok(ctx)
    }
}

impl fmt::Display for LmuContext {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        let mut parts: Vec<String> = self.vars.iter().map(|(n, t)| format!("{n}:{t}")).collect();
        parts.extend(
            self.covars
                .iter()
                .map(|(n, t)| format!("@{n}:{}", LmuType::neg(t.clone()))),
        );
        f.write_str(&parts.join(", "))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn parse_lbar_contexts() {
        let c = LbarContexts::parse("x:A, y:A -> A, @a:A").unwrap();
        assert_eq!(c.gamma.len(), 2);
        assert_eq!(c.delta[&Name::new("a")], LbarType::atom("A"));
        assert_eq!(c.gamma_string(), "x:A, y:A -> A");
        assert!(LbarContexts::parse("X:A").is_err());
        assert!(LbarContexts::parse("x").is_err());
    }

    #[test]
    fn parse_lmu_context() {
        let c = LmuContext::parse("x:A, @a:A -> bot").unwrap();
        assert_eq!(c.covars[&Name::new("a")], LmuType::atom("A"));
        assert_eq!(c.to_string(), "x:A, @a:A -> bot");
        assert!(LmuContext::parse("@a:A").is_err());
    }
}
