//! Report values and their two renderings. Text output is derived from
//! the same JSON value, so both carry the same result set.

use std::fmt::Display;

use hecke_core::Check;
use serde_json::{json, Map, Value};

pub const SCHEMA_VERSION: u32 = 1;

pub fn pass() -> Value {
    json!({"status": "pass"})
}

pub fn fail(witness: impl Display) -> Value {
    json!({"status": "fail", "witness": witness.to_string()})
}

pub fn skipped(reason: impl Display) -> Value {
    json!({"status": "skipped", "reason": reason.to_string()})
}

pub fn check<W: Display>(c: &Check<W>) -> Value {
    match c.witness() {
        None => pass(),
        Some(w) => fail(w),
    }
}

pub fn status(ok: bool, witness: impl FnOnce() -> String) -> Value {
    if ok {
        pass()
    } else {
        fail(witness())
    }
}

/// Adds entries to a status object.
pub fn with(mut v: Value, extra: Value) -> Value {
    if let (Value::Object(a), Value::Object(b)) = (&mut v, extra) {
        a.extend(b);
    }
    v
}

/// True if any object in the tree has status `fail` or `error`.
pub fn any_failed(v: &Value) -> bool {
    match v {
        Value::Object(m) => {
            matches!(
                m.get("status").and_then(Value::as_str),
                Some("fail" | "error")
            ) || m.values().any(any_failed)
        }
        Value::Array(xs) => xs.iter().any(any_failed),
        _ => false,
    }
}

/// Top-level envelope shared by every command.
pub fn envelope(command: &str, body: Map<String, Value>) -> Value {
    let mut m = Map::new();
    m.insert("schema_version".into(), json!(SCHEMA_VERSION));
    m.insert("command".into(), json!(command));
    m.insert("version".into(), json!(env!("CARGO_PKG_VERSION")));
    m.extend(body);
    Value::Object(m)
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::Null => Some("null".into()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::String(s) => Some(s.clone()),
        _ => None,
    }
}

fn inline(v: &Value) -> Option<String> {
    if let Some(s) = scalar(v) {
        return Some(s);
    }
    let Value::Array(xs) = v else { return None };
    let parts: Option<Vec<String>> = xs.iter().map(scalar).collect();
    parts.map(|p| format!("[{}]", p.join(", ")))
}

fn render(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = inline(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    out.push_str(&format!("{pad}{key}:\n"));
    match v {
        Value::Object(m) => {
            for (k, x) in m {
                render(out, k, x, depth + 1);
            }
        }
        Value::Array(xs) => {
            for (i, x) in xs.iter().enumerate() {
                render(out, &format!("[{}]", i + 1), x, depth + 1);
            }
        }
        _ => unreachable!("scalars render inline"),
    }
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    if let Value::Object(m) = v {
        for (k, x) in m {
            render(&mut out, k, x, 0);
        }
    }
    out
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("reports are plain JSON");
    s.push('\n');
    s
}
