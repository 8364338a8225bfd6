//! The `enriched-zeta/1` JSON report.

use std::collections::BTreeMap;

use gwzeta::zeta::FactorList;
use gwzeta::{GwFq, GwFqRing, Series};
use num_bigint::BigInt;
use num_traits::Signed;
use serde_json::{Map, Number, Value};

pub const SCHEMA: &str = "enriched-zeta/1";

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonElement {
    pub rank: BigInt,
    pub disc: u8,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonFactor {
    pub weight: JsonElement,
    pub pole: JsonElement,
    pub mult: BigInt,
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct JsonReport {
    pub q: BigInt,
    pub variety: String,
    pub order: BigInt,
    pub coefficients: Vec<JsonElement>,
    pub closed_form: Option<Vec<JsonFactor>>,
    pub checks: BTreeMap<String, bool>,
}

#[derive(Debug, thiserror::Error, Clone, PartialEq, Eq)]
pub enum ReportError {
    #[error("malformed JSON: {0}")]
    Syntax(String),
    #[error("unsupported schema {0:?}")]
    Schema(String),
    #[error("field {0}: wrong shape")]
    Shape(String),
}

impl From<&GwFq> for JsonElement {
    fn from(x: &GwFq) -> Self {
        JsonElement { rank: x.rank().clone(), disc: x.disc_bit() }
    }
}

impl JsonReport {
    pub fn new(q: u64, variety: &str, series: &Series<GwFqRing>) -> Self {
        JsonReport {
            q: q.into(),
            variety: variety.to_string(),
            order: series.order().into(),
            coefficients: series.coeffs().iter().map(JsonElement::from).collect(),
            closed_form: None,
            checks: BTreeMap::new(),
        }
    }

    pub fn with_closed_form(mut self, list: &FactorList<GwFqRing>) -> Self {
        self.closed_form = Some(
            list.factors()
                .iter()
                .map(|f| JsonFactor { weight: (&f.weight).into(), pole: (&f.pole).into(), mult: f.mult.into() })
                .collect(),
        );
        self
    }

    pub fn check(mut self, name: &str, ok: bool) -> Self {
        self.checks.insert(name.to_string(), ok);
        self
    }

    pub fn to_value(&self) -> Value {
        let mut obj = Map::new();
        obj.insert("schema".into(), Value::String(SCHEMA.into()));
        obj.insert("q".into(), int_value(&self.q));
        obj.insert("variety".into(), Value::String(self.variety.clone()));
        obj.insert("order".into(), int_value(&self.order));
        obj.insert("coefficients".into(), Value::Array(self.coefficients.iter().map(element_value).collect()));
        if let Some(factors) = &self.closed_form {
            let items = factors
                .iter()
                .map(|f| {
                    let mut o = Map::new();
                    o.insert("weight".into(), element_value(&f.weight));
                    o.insert("pole".into(), element_value(&f.pole));
                    o.insert("mult".into(), int_value(&f.mult));
                    Value::Object(o)
                })
                .collect();
            obj.insert("closed_form".into(), Value::Array(items));
        }
        let checks = self.checks.iter().map(|(k, v)| (k.clone(), Value::Bool(*v))).collect();
        obj.insert("checks".into(), Value::Object(checks));
        Value::Object(obj)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(&self.to_value()).expect("serializable")
    }

    pub fn from_json(text: &str) -> Result<Self, ReportError> {
        let v: Value = serde_json::from_str(text).map_err(|e| ReportError::Syntax(e.to_string()))?;
        let obj = v.as_object().ok_or_else(|| ReportError::Shape("<root>".into()))?;
        match obj.get("schema") {
            Some(Value::String(s)) if s == SCHEMA => {}
            other => return Err(ReportError::Schema(other.map(|x| x.to_string()).unwrap_or_default())),
        }
        let field = |k: &str| obj.get(k).ok_or_else(|| ReportError::Shape(k.into()));
        let coefficients = array(field("coefficients")?, "coefficients")?
            .iter()
            .map(|x| read_element(x, "coefficients"))
            .collect::<Result<_, _>>()?;
        let closed_form = match obj.get("closed_form") {
            None => None,
            Some(v) => Some(
                array(v, "closed_form")?
                    .iter()
                    .map(|f| {
                        let o = f.as_object().ok_or_else(|| ReportError::Shape("closed_form".into()))?;
                        let get = |k: &str| o.get(k).ok_or_else(|| ReportError::Shape(format!("closed_form.{k}")));
                        Ok(JsonFactor {
                            weight: read_element(get("weight")?, "weight")?,
                            pole: read_element(get("pole")?, "pole")?,
                            mult: read_int(get("mult")?, "mult")?,
                        })
                    })
                    .collect::<Result<_, ReportError>>()?,
            ),
        };
        let checks = field("checks")?
            .as_object()
            .ok_or_else(|| ReportError::Shape("checks".into()))?
            .iter()
            .map(|(k, v)| v.as_bool().map(|b| (k.clone(), b)).ok_or_else(|| ReportError::Shape(format!("checks.{k}"))))
            .collect::<Result<_, _>>()?;
        Ok(JsonReport {
            q: read_int(field("q")?, "q")?,
            variety: field("variety")?.as_str().ok_or_else(|| ReportError::Shape("variety".into()))?.to_string(),
            order: read_int(field("order")?, "order")?,
            coefficients,
            closed_form,
            checks,
        })
    }
}

/// A JSON number below 2^53 in absolute value, a decimal string otherwise.
pub fn int_value(n: &BigInt) -> Value {
    if n.abs() < BigInt::from(1u64 << 53) {
        let small: i64 = n.try_into().expect("below 2^53");
        Value::Number(Number::from(small))
    } else {
        Value::String(n.to_string())
    }
}

fn element_value(e: &JsonElement) -> Value {
    let mut o = Map::new();
    o.insert("rank".into(), int_value(&e.rank));
    o.insert("disc".into(), Value::Number(Number::from(e.disc)));
    Value::Object(o)
}

fn array<'a>(v: &'a Value, name: &str) -> Result<&'a Vec<Value>, ReportError> {
    v.as_array().ok_or_else(|| ReportError::Shape(name.into()))
}

fn read_int(v: &Value, name: &str) -> Result<BigInt, ReportError> {
    let text = match v {
        Value::Number(n) => n.to_string(),
        Value::String(s) => s.clone(),
        _ => return Err(ReportError::Shape(name.into())),
    };
    text.parse().map_err(|_| ReportError::Shape(name.into()))
}

fn read_element(v: &Value, name: &str) -> Result<JsonElement, ReportError> {
    let o = v.as_object().ok_or_else(|| ReportError::Shape(name.into()))?;
    let rank = read_int(o.get("rank").ok_or_else(|| ReportError::Shape(format!("{name}.rank")))?, name)?;
    let disc = match o.get("disc").and_then(Value::as_u64) {
        Some(d @ (0 | 1)) => d as u8,
        _ => return Err(ReportError::Shape(format!("{name}.disc"))),
    };
    Ok(JsonElement { rank, disc })
}

#[cfg(test)]
mod tests {
    use super::*;
    use gwzeta::FqTag;

    #[test]
    fn large_integers_become_strings() {
        assert_eq!(int_value(&BigInt::from(9007199254740991u64)), Value::Number(9007199254740991u64.into()));
        assert_eq!(int_value(&BigInt::from(9007199254740992u64)), Value::String("9007199254740992".into()));
        assert_eq!(int_value(&BigInt::from(-9007199254740992i64)), Value::String("-9007199254740992".into()));
    }

    #[test]
    fn round_trip_is_byte_identical() {
        let f = FqTag::new(7).unwrap();
        let coeffs =
            vec![GwFq::new(f, 6, false), GwFq::new(f, "123456789012345678901".parse::<BigInt>().unwrap(), true)];
        let report = JsonReport::new(7, "ell(2,3)", &Series::from_coeffs(GwFqRing(f), coeffs))
            .check("b", true)
            .check("a", false);
        let text = report.to_json();
        let back = JsonReport::from_json(&text).unwrap();
        assert_eq!(back, report);
        assert_eq!(back.to_json(), text);
        assert!(text.find("\"schema\"").unwrap() < text.find("\"q\"").unwrap());
        assert!(text.find("\"a\"").unwrap() < text.find("\"b\"").unwrap());
        assert!(text.contains("\"123456789012345678901\""));
    }

    #[test]
    fn rejects_foreign_documents() {
        assert!(matches!(JsonReport::from_json("{\"schema\": \"other\"}"), Err(ReportError::Schema(_))));
        assert!(matches!(JsonReport::from_json("[]"), Err(ReportError::Shape(_))));
        assert!(matches!(JsonReport::from_json("{"), Err(ReportError::Syntax(_))));
    }
}
