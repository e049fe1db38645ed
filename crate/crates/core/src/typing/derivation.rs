//! Derivation trees and type errors shared by both checkers.

use std::fmt;

use serde_json::{json, Value};
use thiserror::Error;

/// A derivation node: the rule used, its conclusion and its premises.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Derivation<J> {
    pub rule: &'static str,
    pub conclusion: J,
    pub premises: Vec<Derivation<J>>,
    /// Set when a binder shadows an outer declaration.
    pub note: Option<String>,
}

impl<J: fmt::Display> Derivation<J> {
    pub fn to_json(&self) -> Value {
        let mut v = json!({
            "rule": self.rule,
            "judgment": self.conclusion.to_string(),
            "premises": self.premises.iter().map(Derivation::to_json).collect::<Vec<_>>(),
        });
        if let Some(n) = &self.note {
            v["note"] = Value::String(n.clone());
        }
        v
    }

    /// Indented text rendering, conclusion first.
    pub fn render(&self) -> String {
        let mut out = String::new();
        self.render_into(0, &mut out);
        out
    }

    fn render_into(&self, depth: usize, out: &mut String) {
        out.push_str(&"  ".repeat(depth));
        out.push_str(&format!("{}  ({})", self.conclusion, self.rule));
        if let Some(n) = &self.note {
            out.push_str(&format!("  [{n}]"));
        }
        out.push('\n');
        for p in &self.premises {
            p.render_into(depth + 1, out);
        }
    }

    pub fn size(&self) -> usize {
        1 + self.premises.iter().map(Derivation::size).sum::<usize>()
    }
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub enum TypeErrorKind {
    Unbound(String),
    MissingAnnotation(String),
    NotAnArrow(String),
    NotBottom(String),
    Clash { expected: String, found: String },
}

/// A type error at a position (child-index path) of the checked term.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("type error at position {position:?}: {kind}")]
pub struct TypeError {
    pub position: Vec<usize>,
    pub kind: TypeErrorKind,
}

impl fmt::Display for TypeErrorKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            TypeErrorKind::Unbound(v) => write!(f, "unbound variable {v}"),
            TypeErrorKind::MissingAnnotation(v) => write!(f, "binder {v} needs a type annotation"),
            TypeErrorKind::NotAnArrow(t) => write!(f, "expected an arrow type, found {t}"),
            TypeErrorKind::NotBottom(t) => write!(f, "the body of a mu must have type bot, found {t}"),
            TypeErrorKind::Clash { expected, found } => write!(f, "expected type {expected}, found {found}"),
        }
    }
}

impl TypeError {
    pub(crate) fn at(path: &[usize], kind: TypeErrorKind) -> Self {
        TypeError {
            position: path.to_vec(),
            kind,
        }
    }
}
