//! Sequence loading from files: either the JSON schema emitted by
//! `generate`, or a bare token list (commas, whitespace, or newlines).

use std::path::Path;

use huffman_core::{HuffmanSequence, Numeric, Scale};
use serde_json::Value;

use crate::Failure;

pub fn load_sequence(path: &Path) -> Result<HuffmanSequence, Failure> {
    let text = std::fs::read_to_string(path)
        .map_err(|e| Failure::usage(format!("cannot read {}: {e}", path.display())))?;
    if text.trim_start().starts_with('{') {
        parse_json(&text)
    } else {
        parse_tokens(&text)
    }
}

/// A token parses like a scale: "/" or no decimal point means exact.
fn parse_element(token: &str) -> Result<Numeric, Failure> {
    token
        .parse::<Scale>()
        .map(|s| s.to_numeric())
        .map_err(|e| Failure::usage(format!("bad element {token:?}: {e}")))
}

fn parse_json(text: &str) -> Result<HuffmanSequence, Failure> {
    let value: Value =
        serde_json::from_str(text).map_err(|e| Failure::usage(format!("bad JSON input: {e}")))?;
    let elements = value
        .get("elements")
        .and_then(Value::as_array)
        .ok_or_else(|| Failure::usage("JSON input needs an \"elements\" array"))?;
    let parsed = elements
        .iter()
        .map(|v| match v {
            Value::Number(n) => n
                .as_f64()
                .map(Numeric::from_f64)
                .ok_or_else(|| Failure::usage(format!("bad element {n}"))),
            Value::String(s) => parse_element(s),
            other => Err(Failure::usage(format!(
                "elements must be numbers or exact strings, got {other}"
            ))),
        })
        .collect::<Result<Vec<_>, _>>()?;
    if parsed.is_empty() {
        return Err(Failure::usage("JSON input has no elements"));
    }
    let label = value
        .get("label")
        .and_then(Value::as_str)
        .map(str::to_string);
    Ok(HuffmanSequence::from_raw(parsed, label))
}

fn parse_tokens(text: &str) -> Result<HuffmanSequence, Failure> {
    let mut elements = Vec::new();
    for token in text
        .split([',', ';', ' ', '\t', '\r', '\n'])
        .filter(|t| !t.is_empty())
    {
        // Header words like "element" are skipped; anything else must parse.
        if token.chars().all(|c| c.is_ascii_alphabetic() || c == '_') {
            continue;
        }
        elements.push(parse_element(token)?);
    }
    if elements.is_empty() {
        return Err(Failure::usage("input file contains no elements"));
    }
    Ok(HuffmanSequence::from_raw(elements, None))
}
