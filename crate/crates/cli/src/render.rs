//! Value serialization shared by every subcommand: exact rationals travel as
//! strings, floats as shortest round-trip literals, in JSON and CSV alike.

use huffman_core::{HuffmanSequence, Numeric, Scale};
use serde_json::{json, Value};

/// Exact values become "p/q" or integer strings; floats become JSON numbers.
pub fn numeric_value(v: &Numeric) -> Value {
    if v.is_exact() {
        Value::String(v.to_string())
    } else {
        float_value(v.approx())
    }
}

/// Non-finite floats have no JSON number form and fall back to strings.
pub fn float_value(v: f64) -> Value {
    serde_json::Number::from_f64(v)
        .map(Value::Number)
        .unwrap_or_else(|| Value::String(format!("{v:?}")))
}

/// Absent metrics mark a pure delta; "inf" is their distinguished value.
pub fn metric_value(v: &Option<Numeric>) -> Value {
    match v {
        Some(x) => numeric_value(x),
        None => Value::String("inf".into()),
    }
}

pub fn scale_value(s: &Option<Scale>) -> Value {
    match s {
        None => Value::Null,
        Some(s) if s.is_exact() => json!({ "exact": true, "value": s.to_string() }),
        Some(s) => json!({ "exact": false, "value": float_value(s.approx()) }),
    }
}

pub fn sequence_value(seq: &HuffmanSequence, report: Value) -> Value {
    json!({
        "family": seq.family.name(),
        "label": seq.label,
        "length": seq.len(),
        "scale": scale_value(&seq.scale),
        "rotation_offset": seq.rotation_offset,
        "elements": seq.elements.iter().map(numeric_value).collect::<Vec<_>>(),
        "report": report,
    })
}

/// CSV cell for a numeric: Display already emits "p/q" or a round-trip float.
pub fn csv_numeric(v: &Numeric) -> String {
    v.to_string()
}

pub fn csv_float(v: f64) -> String {
    format!("{v:?}")
}

pub fn csv_scale(s: &Option<Scale>) -> String {
    match s {
        None => String::new(),
        Some(s) if s.is_exact() => s.to_string(),
        Some(s) => csv_float(s.approx()),
    }
}

pub fn csv_metric(v: &Option<Numeric>) -> String {
    match v {
        Some(x) => csv_numeric(x),
        None => "inf".into(),
    }
}

pub fn json_text(value: &Value) -> String {
    let mut text = serde_json::to_string_pretty(value).expect("serializable value");
    text.push('\n');
    text
}

pub fn csv_text(header: &str, rows: Vec<String>) -> String {
    let mut text = String::from(header);
    text.push('\n');
    for row in rows {
        text.push_str(&row);
        text.push('\n');
    }
    text
}
