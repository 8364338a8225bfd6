use num_bigint::BigInt;
use serde_json::Value;
use thiserror::Error;

use super::{from_table, from_weil_data, PointCountSource, VarietyError, WeilData};
use crate::gw::{FqTag, GwError};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum IngestError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("expected a JSON object at the top level")]
    NotAnObject,
    #[error("missing field \"{0}\"")]
    MissingField(&'static str),
    #[error("exactly one of \"counts\" or \"weil\" must be present")]
    AmbiguousPayload,
    #[error("{path}: expected an exact integer, found {found}")]
    NotAnInteger { path: String, found: String },
    #[error("{path}: expected an array")]
    NotAnArray { path: String },
    #[error("\"proper\" must be a boolean")]
    ProperNotBool,
    #[error("q = {0} is out of range")]
    BadQ(String),
    #[error(transparent)]
    Field(#[from] GwError),
    #[error(transparent)]
    Variety(#[from] VarietyError),
}

/// Parses `{"q": int, "counts": [...]}` or `{"q": int, "weil": [[...], ...]}`,
/// with an optional `"proper"` flag (default `true`). Integers may be written
/// as JSON numbers of any size or as decimal strings; floats are rejected.
pub fn parse_source_json(text: &str) -> Result<PointCountSource, IngestError> {
    let doc: Value = serde_json::from_str(text).map_err(|e| IngestError::Syntax(e.to_string()))?;
    let obj = doc.as_object().ok_or(IngestError::NotAnObject)?;
    let q_val = obj.get("q").ok_or(IngestError::MissingField("q"))?;
    let q_big = exact_int(q_val, "q")?;
    let q: u64 = q_big.try_into().map_err(|_| IngestError::BadQ(q_val.to_string()))?;
    let field = FqTag::new(q)?;
    let proper = match obj.get("proper") {
        None => true,
        Some(Value::Bool(b)) => *b,
        Some(_) => return Err(IngestError::ProperNotBool),
    };
    match (obj.get("counts"), obj.get("weil")) {
        (Some(counts), None) => {
            let table = int_array(counts, "counts")?;
            Ok(from_table(field, table, proper)?)
        }
        (None, Some(weil)) => {
            let rows = weil.as_array().ok_or_else(|| IngestError::NotAnArray { path: "weil".into() })?;
            let polys = rows
                .iter()
                .enumerate()
                .map(|(j, row)| int_array(row, &format!("weil[{j}]")))
                .collect::<Result<Vec<_>, _>>()?;
            Ok(from_weil_data(WeilData::new(field, polys))?.with_proper(proper))
        }
        _ => Err(IngestError::AmbiguousPayload),
    }
}

fn int_array(v: &Value, path: &str) -> Result<Vec<BigInt>, IngestError> {
    let items = v.as_array().ok_or_else(|| IngestError::NotAnArray { path: path.into() })?;
    items.iter().enumerate().map(|(i, x)| exact_int(x, &format!("{path}[{i}]"))).collect()
}

fn exact_int(v: &Value, path: &str) -> Result<BigInt, IngestError> {
    let text = match v {
        // with arbitrary_precision the original digits are preserved
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        other => {
            return Err(IngestError::NotAnInteger { path: path.into(), found: other.to_string() });
        }
    };
    let digits = text.strip_prefix('-').unwrap_or(&text);
    if digits.is_empty() || !digits.bytes().all(|b| b.is_ascii_digit()) {
        return Err(IngestError::NotAnInteger { path: path.into(), found: v.to_string() });
    }
    Ok(text.parse().expect("validated decimal digits"))
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn counts_table() {
        let src = parse_source_json(r#"{"q": 7, "counts": [6, 60]}"#).unwrap();
        assert_eq!(src.field().q(), 7);
        assert!(src.is_proper());
        assert_eq!(src.count(2).unwrap(), BigInt::from(60));
    }

    #[test]
    fn huge_and_string_integers() {
        let src =
            parse_source_json(r#"{"q": 3, "counts": [123456789012345678901234567890, "9007199254740993"]}"#).unwrap();
        assert_eq!(src.count(1).unwrap(), "123456789012345678901234567890".parse::<BigInt>().unwrap());
        assert_eq!(src.count(2).unwrap(), BigInt::from(9007199254740993u64));
    }

    #[test]
    fn weil_payload() {
        let src = parse_source_json(r#"{"q": 7, "weil": [[1, -1], [1, -2, 7], [1, -7]], "proper": true}"#).unwrap();
        assert_eq!(src.counts(2).unwrap(), vec![BigInt::from(6), BigInt::from(60)]);
        assert_eq!(src.dim(), 1);
    }

    #[test]
    fn rejections() {
        assert!(matches!(parse_source_json(r#"{"q": 7, "counts": [6.0]}"#), Err(IngestError::NotAnInteger { .. })));
        assert!(matches!(parse_source_json(r#"{"q": 7, "counts": [1e3]}"#), Err(IngestError::NotAnInteger { .. })));
        assert_eq!(parse_source_json(r#"{"counts": [1]}"#), Err(IngestError::MissingField("q")));
        assert_eq!(parse_source_json(r#"{"q": 7}"#), Err(IngestError::AmbiguousPayload));
        assert!(matches!(parse_source_json(r#"{"q": 6, "counts": [1]}"#), Err(IngestError::Field(_))));
        assert!(matches!(parse_source_json("[1]"), Err(IngestError::NotAnObject)));
        assert!(matches!(parse_source_json("{"), Err(IngestError::Syntax(_))));
        assert!(matches!(parse_source_json(r#"{"q": 3, "counts": [-1]}"#), Err(IngestError::Variety(_))));
        let flagged = parse_source_json(r#"{"q": 3, "counts": [1], "proper": false}"#).unwrap();
        assert!(!flagged.is_proper());
    }
}
