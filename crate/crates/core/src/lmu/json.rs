//! Tagged JSON AST for λμ terms, mirroring the λ̄μμ̃ format.

use serde_json::{json, Value};

use super::term::LmuTerm;
use crate::json::{binder_json, children, field_name, field_type, JsonError};
use crate::typing::LmuType;

impl LmuTerm {
    pub fn to_json(&self) -> Value {
        match self {
            LmuTerm::Var(x) => json!({"tag": "var", "name": x.as_str()}),
            LmuTerm::Abs(x, ty, b) => binder_json("lam", x, ty.as_ref().map(ToString::to_string), b.to_json()),
            LmuTerm::Mu(a, ty, b) => binder_json("mu", a, ty.as_ref().map(ToString::to_string), b.to_json()),
            LmuTerm::Named(a, b) => json!({"tag": "named", "var": a.as_str(), "children": [b.to_json()]}),
            LmuTerm::App(f, a) => json!({"tag": "app", "children": [f.to_json(), a.to_json()]}),
        }
    }

    pub fn from_json(v: &Value) -> Result<LmuTerm, JsonError> {
        let obj = v.as_object().ok_or(JsonError::Shape("expected an object"))?;
        let tag = obj.get("tag").and_then(Value::as_str).ok_or(JsonError::Shape("missing tag"))?;
        if tag == "var" {
            return Ok(LmuTerm::Var(field_name(obj, "name")?));
        }
        let mut kids: Vec<LmuTerm> = children(obj)?
            .iter()
            .map(LmuTerm::from_json)
            .collect::<Result<_, _>>()?;
        let ty = || -> Result<Option<LmuType>, JsonError> {
            field_type(obj)?
                .map(|s| LmuType::parse(&s).map_err(|e| JsonError::Type(e.to_string())))
                .transpose()
        };
        let arity = if tag == "app" { 2 } else { 1 };
        if kids.len() != arity {
            return Err(JsonError::Shape("wrong number of children"));
        }
        let first = Box::new(kids.remove(0));
        Ok(match tag {
            "lam" => LmuTerm::Abs(field_name(obj, "var")?, ty()?, first),
            "mu" => LmuTerm::Mu(field_name(obj, "var")?, ty()?, first),
            "named" => LmuTerm::Named(field_name(obj, "var")?, first),
            "app" => LmuTerm::App(first, Box::new(kids.remove(0))),
            other => return Err(JsonError::Tag(other.to_string())),
        })
    }
}

#[cfg(test)]
mod tests {
    use crate::lmu::parse_lmu;
    use crate::lmu::LmuTerm;

    #[test]
    fn round_trip() {
        for src in ["(\\x:A. x y)", "mu @a:A -> A. [@a] \\y. y", "((x y) z)"] {
            let t = parse_lmu(src).unwrap();
            assert_eq!(LmuTerm::from_json(&t.to_json()).unwrap(), t, "{src}");
        }
    }
}
