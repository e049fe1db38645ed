//! Tagged JSON AST for λ̄μμ̃ terms.
//!
//! Variables are `{"tag": "lvar", "name": "x"}`; binders carry `"var"`, an
//! optional `"type"` string and one child; other nodes carry `"children"`.

use serde_json::{json, Map, Value};

use super::term::LbarTerm;
use crate::json::{binder_json, children, field_name, field_type, JsonError};
use crate::names::Name;
use crate::typing::LbarType;

impl LbarTerm {
    pub fn to_json(&self) -> Value {
        let bin = |tag, v: &Name, ty: &Option<LbarType>, b: &LbarTerm| {
            binder_json(tag, v, ty.as_ref().map(ToString::to_string), b.to_json())
        };
        match self {
            LbarTerm::Command(l, r) => json!({"tag": "cmd", "children": [l.to_json(), r.to_json()]}),
            LbarTerm::LVar(x) => json!({"tag": "lvar", "name": x.as_str()}),
            LbarTerm::RVar(a) => json!({"tag": "rvar", "name": a.as_str()}),
            LbarTerm::LAbs(x, ty, b) => bin("lam_l", x, ty, b),
            LbarTerm::RAbs(a, ty, b) => bin("lam_r", a, ty, b),
            LbarTerm::LMu(a, ty, b) => bin("mu_l", a, ty, b),
            LbarTerm::RMu(x, ty, b) => bin("mu_r", x, ty, b),
            LbarTerm::RConsL(h, t) => json!({"tag": "cons_l", "children": [h.to_json(), t.to_json()]}),
            LbarTerm::LConsR(h, t) => json!({"tag": "cons_r", "children": [h.to_json(), t.to_json()]}),
        }
    }

    /// Inverse of [`LbarTerm::to_json`]; also checks sorts.
    pub fn from_json(v: &Value) -> Result<LbarTerm, JsonError> {
        let obj: &Map<String, Value> = v.as_object().ok_or(JsonError::Shape("expected an object"))?;
        let tag = obj.get("tag").and_then(Value::as_str).ok_or(JsonError::Shape("missing tag"))?;
        let ty = || -> Result<Option<LbarType>, JsonError> {
            field_type(obj)?
                .map(|s| LbarType::parse(&s).map_err(|e| JsonError::Type(e.to_string())))
                .transpose()
        };
        let kids = || -> Result<Vec<LbarTerm>, JsonError> {
            children(obj)?.iter().map(LbarTerm::from_json).collect()
        };
        let one = || -> Result<Box<LbarTerm>, JsonError> {
            let mut k = kids()?;
            if k.len() != 1 {
                return Err(JsonError::Shape("binder needs exactly one child"));
            }
            Ok(Box::new(k.remove(0)))
        };
        let two = || -> Result<(LbarTerm, LbarTerm), JsonError> {
            let mut k = kids()?;
            if k.len() != 2 {
                return Err(JsonError::Shape("node needs exactly two children"));
            }
            let b = k.remove(1);
            Ok((k.remove(0), b))
        };
        let t = match tag {
            "cmd" => {
                let (l, r) = two()?;
                LbarTerm::command(l, r)
            }
            "lvar" => LbarTerm::LVar(field_name(obj, "name")?),
            "rvar" => LbarTerm::RVar(field_name(obj, "name")?),
            "lam_l" => LbarTerm::LAbs(field_name(obj, "var")?, ty()?, one()?),
            "lam_r" => LbarTerm::RAbs(field_name(obj, "var")?, ty()?, one()?),
            "mu_l" => LbarTerm::LMu(field_name(obj, "var")?, ty()?, one()?),
            "mu_r" => LbarTerm::RMu(field_name(obj, "var")?, ty()?, one()?),
            "cons_l" => {
                let (h, t) = two()?;
                LbarTerm::rcons(h, t)
            }
            "cons_r" => {
                let (h, t) = two()?;
                LbarTerm::lcons(h, t)
            }
            other => return Err(JsonError::Tag(other.to_string())),
        };
        t.check_sorts().map_err(JsonError::Sort)?;
        Ok(t)
    }
}
