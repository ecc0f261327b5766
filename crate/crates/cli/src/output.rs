//! Result envelopes: JSON with sorted keys, or plain text.

use serde_json::{json, Map, Value};

use higgsgrass::grobner::Ideal;
use higgsgrass::polyring::Poly;

pub fn strings<'a>(polys: impl IntoIterator<Item = &'a Poly>) -> Value {
    Value::Array(polys.into_iter().map(|p| Value::String(p.to_string())).collect())
}

/// Generators printed with the listed variable blocks compared first.
pub fn strings_blocks<'a>(polys: impl IntoIterator<Item = &'a Poly>, blocks: &[Vec<usize>]) -> Value {
    Value::Array(polys.into_iter().map(|p| Value::String(p.format_blocks(blocks))).collect())
}

pub fn gens(i: &Ideal) -> Value {
    strings(i.gens())
}

pub fn num(n: impl ToString) -> Value {
    Value::String(n.to_string())
}

pub fn envelope(command: &str, digest: &str, stats: Map<String, Value>, body: Result<Value, Value>) -> Value {
    let (status, key, payload) = match body {
        Ok(v) => ("ok", "result", v),
        Err(e) => ("error", "error", e),
    };
    let mut m = Map::new();
    m.insert("command".into(), json!(command));
    m.insert("input_digest".into(), json!(digest));
    m.insert("stats".into(), Value::Object(stats));
    m.insert("status".into(), json!(status));
    m.insert(key.into(), payload);
    Value::Object(m)
}

pub fn to_json(v: &Value) -> String {
    let mut s = serde_json::to_string_pretty(v).expect("values serialize");
    s.push('\n');
    s
}

pub fn to_text(v: &Value) -> String {
    let mut out = String::new();
    write_text(&mut out, "", v, 0);
    out
}

fn scalar(v: &Value) -> Option<String> {
    match v {
        Value::String(s) => Some(s.clone()),
        Value::Bool(b) => Some(b.to_string()),
        Value::Number(n) => Some(n.to_string()),
        Value::Null => Some("none".into()),
        _ => None,
    }
}

fn write_text(out: &mut String, key: &str, v: &Value, depth: usize) {
    let pad = "  ".repeat(depth);
    if let Some(s) = scalar(v) {
        out.push_str(&format!("{pad}{key}: {s}\n"));
        return;
    }
    match v {
        Value::Object(m) => {
            let inner = if key.is_empty() {
                depth
            } else {
                out.push_str(&format!("{pad}{key}:\n"));
                depth + 1
            };
            for (k, x) in m {
                write_text(out, k, x, inner);
            }
        }
        Value::Array(items) => {
            out.push_str(&format!("{pad}{key}:\n"));
            for (k, x) in items.iter().enumerate() {
                match scalar(x) {
                    Some(s) => out.push_str(&format!("{pad}  {s}\n")),
                    None => write_text(out, &format!("[{k}]"), x, depth + 1),
                }
            }
        }
        _ => unreachable!(),
    }
}
