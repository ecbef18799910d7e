//! JSON interop: exact-aware numbers and vector encoding.
//!
//! Report consumers need to know which numbers are certified rationals and
//! which are float estimates, so every numeric report field is a
//! [`ReportNum`] carrying an `exact` flag. Exact values additionally ship
//! the rational in `p/q` form; the float field is always populated for
//! convenience.
//!
//! Scalars in input JSON may be written as numbers (decimal literals parse
//! exactly, so `0.1` is one tenth) or as `"p/q"` strings. A complex scalar
//! is a two-element array `[re, im]`. A vector is an array of scalars:
//! `[1, "1/2", 0]` or `[[0, 1], ["1/2", 0]]`.

use num_traits::ToPrimitive;
use serde::Serialize;
use serde_json::{json, Value as Json};

use crate::error::{Error, Result};
use crate::scalar::{rat_from_str, rat_to_f64, rat_to_string, ExactComplex, Rat, Value, Vector};

use num_complex::Complex64;

/// A numeric report field with provenance.
#[derive(Clone, Debug, Serialize)]
pub struct ReportNum {
    pub value: f64,
    pub exact: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub rational: Option<String>,
}

impl ReportNum {
    pub fn exact(q: &Rat) -> Self {
        ReportNum {
            value: rat_to_f64(q),
            exact: true,
            rational: Some(rat_to_string(q)),
        }
    }

    pub fn float(x: f64) -> Self {
        ReportNum {
            value: x,
            exact: false,
            rational: None,
        }
    }
}

impl From<&Value> for ReportNum {
    fn from(v: &Value) -> Self {
        match v {
            Value::Exact(q) => ReportNum::exact(q),
            Value::Float(x) => ReportNum::float(*x),
        }
    }
}

pub fn json_to_rat(v: &Json) -> Result<Rat> {
    let parsed = match v {
        Json::Number(n) => rat_from_str(&n.to_string()),
        Json::String(s) => rat_from_str(s),
        _ => None,
    };
    parsed.ok_or_else(|| Error::Json(format!("expected a rational scalar, got {v}")))
}

/// Integers that fit i64 serialize as JSON numbers, everything else as a
/// `p/q` string so nothing is rounded.
pub fn rat_to_json(q: &Rat) -> Json {
    if q.denom() == &num_bigint::BigInt::from(1) {
        if let Some(k) = q.numer().to_i64() {
            return json!(k);
        }
    }
    json!(rat_to_string(q))
}

pub fn scalar_to_json(z: &ExactComplex) -> Json {
    if z.im == Rat::from_integer(0.into()) {
        rat_to_json(&z.re)
    } else {
        Json::Array(vec![rat_to_json(&z.re), rat_to_json(&z.im)])
    }
}

pub fn json_to_scalar(v: &Json) -> Result<ExactComplex> {
    match v {
        Json::Array(parts) => {
            if parts.len() != 2 {
                return Err(Error::Json(format!(
                    "complex scalar must be [re, im], got {v}"
                )));
            }
            Ok(ExactComplex::new(
                json_to_rat(&parts[0])?,
                json_to_rat(&parts[1])?,
            ))
        }
        _ => Ok(ExactComplex::from_real(json_to_rat(v)?)),
    }
}

fn json_to_f64(v: &Json) -> Result<f64> {
    match v {
        Json::Number(n) => n
            .as_f64()
            .ok_or_else(|| Error::Json(format!("bad float {v}"))),
        Json::String(s) => rat_from_str(s)
            .map(|q| rat_to_f64(&q))
            .ok_or_else(|| Error::Json(format!("bad float {s:?}"))),
        _ => Err(Error::Json(format!("expected a number, got {v}"))),
    }
}

#[derive(Clone, Copy, PartialEq, Eq, Debug)]
pub enum ParseMode {
    Exact,
    Float,
}

pub fn json_to_vector(v: &Json, mode: ParseMode) -> Result<Vector> {
    let entries = v
        .as_array()
        .ok_or_else(|| Error::Json(format!("vector must be a JSON array, got {v}")))?;
    match mode {
        ParseMode::Exact => {
            let coords = entries.iter().map(json_to_scalar).collect::<Result<_>>()?;
            Ok(Vector::Exact(coords))
        }
        ParseMode::Float => {
            let coords = entries
                .iter()
                .map(|e| match e {
                    Json::Array(parts) if parts.len() == 2 => Ok(Complex64::new(
                        json_to_f64(&parts[0])?,
                        json_to_f64(&parts[1])?,
                    )),
                    other => Ok(Complex64::new(json_to_f64(other)?, 0.0)),
                })
                .collect::<Result<_>>()?;
            Ok(Vector::Float(coords))
        }
    }
}

pub fn vector_to_json(v: &Vector) -> Json {
    match v {
        Vector::Exact(coords) => Json::Array(coords.iter().map(scalar_to_json).collect()),
        Vector::Float(coords) => Json::Array(
            coords
                .iter()
                .map(|z| {
                    if z.im == 0.0 {
                        json!(z.re)
                    } else {
                        json!([z.re, z.im])
                    }
                })
                .collect(),
        ),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalar::rat;

    #[test]
    fn rational_json_roundtrip() {
        let half = rat(1, 2);
        assert_eq!(rat_to_json(&half), json!("1/2"));
        assert_eq!(json_to_rat(&json!("1/2")).unwrap(), half);
        assert_eq!(json_to_rat(&json!(3)).unwrap(), rat(3, 1));
        // decimal literals parse exactly
        assert_eq!(json_to_rat(&json!(0.1)).unwrap(), rat(1, 10));
        assert!(json_to_rat(&json!([1, 2])).is_err());
    }

    #[test]
    fn vector_parsing_modes() {
        let v = json!([1, "1/2", [0, 1]]);
        let exact = json_to_vector(&v, ParseMode::Exact).unwrap();
        match &exact {
            Vector::Exact(coords) => {
                assert_eq!(coords[1].re, rat(1, 2));
                assert_eq!(coords[2].im, rat(1, 1));
            }
            _ => panic!(),
        }
        let float = json_to_vector(&v, ParseMode::Float).unwrap();
        assert!(!float.is_exact());
        // real vectors serialize flat
        let back = vector_to_json(&Vector::from_ints(&[1, -2]));
        assert_eq!(back, json!([1, -2]));
    }

    #[test]
    fn report_num_provenance() {
        let e = ReportNum::exact(&rat(9, 4));
        assert!(e.exact);
        assert_eq!(e.rational.as_deref(), Some("9/4"));
        assert_eq!(e.value, 2.25);
        let f = ReportNum::float(1.5);
        assert!(!f.exact);
        assert!(f.rational.is_none());
    }
}
