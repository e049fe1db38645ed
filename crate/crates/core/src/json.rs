//! Helpers shared by the JSON AST import/export of both calculi.

use serde_json::{json, Map, Value};
use thiserror::Error;

use crate::names::Name;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum JsonError {
    #[error("malformed AST: {0}")]
    Shape(&'static str),
    #[error("unknown AST tag `{0}`")]
    Tag(String),
    #[error("bad type annotation: {0}")]
    Type(String),
    #[error("ill-sorted AST at position {0:?}")]
    Sort(Vec<usize>),
}

pub(crate) fn binder_json(tag: &str, var: &Name, ty: Option<String>, body: Value) -> Value {
    let mut v = json!({"tag": tag, "var": var.as_str(), "children": [body]});
    if let Some(ty) = ty {
        v["type"] = Value::String(ty);
    }
    v
}

pub(crate) fn field_name(obj: &Map<String, Value>, key: &'static str) -> Result<Name, JsonError> {
    obj.get(key)
        .and_then(Value::as_str)
        .map(Name::new)
        .ok_or(JsonError::Shape(key))
}

pub(crate) fn field_type(obj: &Map<String, Value>) -> Result<Option<String>, JsonError> {
    match obj.get("type") {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) => Ok(Some(s.clone())),
        Some(_) => Err(JsonError::Shape("type must be a string")),
    }
}

pub(crate) fn children(obj: &Map<String, Value>) -> Result<&Vec<Value>, JsonError> {
    obj.get("children")
        .and_then(Value::as_array)
        .ok_or(JsonError::Shape("missing children"))
}
