use num_bigint::{BigInt, BigUint};

use crate::error::Error;

pub(crate) fn parse_error(_text: &str, position: usize, message: &str) -> Error {
    Error::Parse {
        position,
        message: message.to_string(),
    }
}

/// `"(n,p)"` with optional whitespace.
pub(crate) fn parse_nat_pair(text: &str) -> Result<(BigUint, BigUint), Error> {
    let t = text.trim();
    let offset = text.len() - text.trim_start().len();
    let inner = t
        .strip_prefix('(')
        .ok_or_else(|| parse_error(text, offset, "expected '('"))?
        .strip_suffix(')')
        .ok_or_else(|| parse_error(text, offset + t.len().saturating_sub(1), "expected ')'"))?;
    let comma = inner
        .find(',')
        .ok_or_else(|| parse_error(text, offset + 1, "expected ','"))?;
    let first = &inner[..comma];
    let second = &inner[comma + 1..];
    let a = parse_nat(first, offset + 1)?;
    let b = parse_nat(second, offset + comma + 2)?;
    Ok((a, b))
}

pub(crate) fn parse_nat(s: &str, at: usize) -> Result<BigUint, Error> {
    let lead = s.len() - s.trim_start().len();
    s.trim()
        .parse::<BigUint>()
        .map_err(|_| parse_error(s, at + lead, "expected a nonnegative integer"))
}

/// Symbols accepted for the empty word.
pub(crate) fn is_empty_word(s: &str) -> bool {
    matches!(s.trim(), "" | "1" | "ε")
}

fn json_object(text: &str) -> Result<serde_json::Map<String, serde_json::Value>, Error> {
    let value: serde_json::Value = serde_json::from_str(text)
        .map_err(|e| parse_error(text, e.column().saturating_sub(1), &e.to_string()))?;
    match value {
        serde_json::Value::Object(map) => Ok(map),
        _ => Err(parse_error(text, 0, "expected a JSON object")),
    }
}

fn json_int(text: &str, v: &serde_json::Value) -> Result<BigInt, Error> {
    match v {
        serde_json::Value::Number(n) => n
            .as_i64()
            .map(BigInt::from)
            .or_else(|| n.as_u64().map(BigInt::from))
            .ok_or_else(|| parse_error(text, 0, "expected an integer")),
        serde_json::Value::String(s) => s
            .trim()
            .parse()
            .map_err(|_| parse_error(text, 0, "expected an integer")),
        _ => Err(parse_error(text, 0, "expected an integer")),
    }
}

/// `{"g":[…],"n":k}`.
pub(crate) fn parse_matrix_element(text: &str) -> Result<(Vec<BigInt>, u32), Error> {
    let map = json_object(text)?;
    let g = match map.get("g") {
        Some(serde_json::Value::Array(items)) => items
            .iter()
            .map(|v| json_int(text, v))
            .collect::<Result<Vec<_>, _>>()?,
        _ => return Err(parse_error(text, 0, "missing array field \"g\"")),
    };
    let n = map
        .get("n")
        .and_then(serde_json::Value::as_u64)
        .and_then(|n| u32::try_from(n).ok())
        .ok_or_else(|| parse_error(text, 0, "missing natural field \"n\""))?;
    Ok((g, n))
}

/// `{"word":"…","g":"…"}`; a missing `g` means the identity.
pub(crate) fn parse_word_group(text: &str) -> Result<(String, String), Error> {
    let map = json_object(text)?;
    let word = match map.get("word") {
        Some(serde_json::Value::String(s)) => s.clone(),
        _ => return Err(parse_error(text, 0, "missing string field \"word\"")),
    };
    let g = match map.get("g") {
        Some(serde_json::Value::String(s)) => s.clone(),
        None => "e".to_string(),
        _ => return Err(parse_error(text, 0, "field \"g\" must be a string")),
    };
    Ok((word, g))
}
