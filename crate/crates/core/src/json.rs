//! JSON encodings for matrices, element tuples, and generator specs.
//!
//! Exact rational entries render as plain integers when they fit, and as
//! `"num/den"` strings otherwise, so round-trips never lose precision.
//! Complex entries render as `[re, im]` pairs. Emitted objects use
//! sorted keys, which keeps byte-for-byte reproducibility.

use crate::field::{FieldSpec, Scalar};
use crate::identities::{Quadruple, Triple};
use crate::matrix::Matrix;
use crate::quadgen::{GenSpec, Strategy};
use num_bigint::BigInt;
use num_traits::{One, ToPrimitive};
use serde_json::{json, Map, Number, Value};
use thiserror::Error;

#[derive(Debug, Error, PartialEq)]
pub enum JsonError {
    #[error("invalid input: {0}")]
    Invalid(String),
    #[error("non-finite number cannot be serialized")]
    NonFinite,
}

fn invalid<T>(msg: impl Into<String>) -> Result<T, JsonError> {
    Err(JsonError::Invalid(msg.into()))
}

fn field_to_parts(field: FieldSpec) -> (&'static str, Option<u64>) {
    match field {
        FieldSpec::ExactRational => ("rational", None),
        FieldSpec::PrimeField(p) => ("gfp", Some(p)),
        FieldSpec::ComplexFloat(_) => ("complex", None),
    }
}

fn field_from_parts(name: &str, p: Option<u64>, eps_rel: f64) -> Result<FieldSpec, JsonError> {
    match name {
        "rational" => Ok(FieldSpec::ExactRational),
        "gfp" => {
            let p = p.ok_or_else(|| JsonError::Invalid("field \"gfp\" requires \"p\"".into()))?;
            FieldSpec::prime(p).map_err(|e| JsonError::Invalid(e.to_string()))
        }
        "complex" => {
            FieldSpec::complex(eps_rel).map_err(|e| JsonError::Invalid(e.to_string()))
        }
        other => invalid(format!("unknown field \"{other}\"")),
    }
}

fn scalar_to_value(s: &Scalar) -> Result<Value, JsonError> {
    match s {
        Scalar::Rational(r) => {
            if r.denom().is_one() {
                if let Some(v) = r.numer().to_i64() {
                    return Ok(Value::Number(v.into()));
                }
                return Ok(Value::String(r.numer().to_string()));
            }
            Ok(Value::String(format!("{}/{}", r.numer(), r.denom())))
        }
        Scalar::Prime(r) => Ok(Value::Number((*r).into())),
        Scalar::Complex(z) => {
            if !z.re.is_finite() || !z.im.is_finite() {
                return Err(JsonError::NonFinite);
            }
            let re = Number::from_f64(z.re).ok_or(JsonError::NonFinite)?;
            let im = Number::from_f64(z.im).ok_or(JsonError::NonFinite)?;
            Ok(Value::Array(vec![Value::Number(re), Value::Number(im)]))
        }
    }
}

fn parse_bigint(s: &str) -> Result<BigInt, JsonError> {
    s.trim()
        .parse::<BigInt>()
        .map_err(|_| JsonError::Invalid(format!("not an integer: \"{s}\"")))
}

fn scalar_from_value(v: &Value, field: FieldSpec) -> Result<Scalar, JsonError> {
    match field {
        FieldSpec::ExactRational => match v {
            Value::Number(n) => {
                if let Some(i) = n.as_i64() {
                    Ok(field.from_i64(i))
                } else if let Some(u) = n.as_u64() {
                    Ok(Scalar::from_bigints(BigInt::from(u), BigInt::one()))
                } else {
                    invalid(format!(
                        "rational entries must be integers or \"num/den\" strings, got {n}"
                    ))
                }
            }
            Value::String(s) => match s.split_once('/') {
                Some((num, den)) => {
                    let den = parse_bigint(den)?;
                    if den == BigInt::from(0) {
                        return invalid("zero denominator");
                    }
                    Ok(Scalar::from_bigints(parse_bigint(num)?, den))
                }
                None => Ok(Scalar::from_bigints(parse_bigint(s)?, BigInt::one())),
            },
            other => invalid(format!("bad rational entry: {other}")),
        },
        FieldSpec::PrimeField(_) => match v.as_i64() {
            Some(i) => Ok(field.from_i64(i)),
            None => invalid(format!("prime-field entries must be integers, got {v}")),
        },
        FieldSpec::ComplexFloat(_) => match v {
            Value::Number(n) => {
                let re = n.as_f64().ok_or_else(|| JsonError::Invalid("bad number".into()))?;
                Ok(Scalar::complex(re, 0.0))
            }
            Value::Array(parts) if parts.len() == 2 => {
                let re = parts[0]
                    .as_f64()
                    .ok_or_else(|| JsonError::Invalid("bad real part".into()))?;
                let im = parts[1]
                    .as_f64()
                    .ok_or_else(|| JsonError::Invalid("bad imaginary part".into()))?;
                Ok(Scalar::complex(re, im))
            }
            Value::Object(o) => {
                let re = o.get("re").and_then(Value::as_f64).unwrap_or(0.0);
                let im = o.get("im").and_then(Value::as_f64).unwrap_or(0.0);
                Ok(Scalar::complex(re, im))
            }
            other => invalid(format!("bad complex entry: {other}")),
        },
    }
}

pub fn matrix_to_value(m: &Matrix) -> Result<Value, JsonError> {
    let (name, p) = field_to_parts(m.field);
    let mut rows = Vec::with_capacity(m.rows);
    for i in 0..m.rows {
        let row: Result<Vec<Value>, JsonError> = m.row(i).iter().map(scalar_to_value).collect();
        rows.push(Value::Array(row?));
    }
    let mut obj = Map::new();
    obj.insert("field".into(), Value::String(name.into()));
    if let Some(p) = p {
        obj.insert("p".into(), Value::Number(p.into()));
    }
    obj.insert("rows".into(), Value::Array(rows.into_iter().collect()));
    Ok(Value::Object(obj))
}

pub fn matrix_from_value(v: &Value, eps_rel: f64) -> Result<Matrix, JsonError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return invalid("matrix must be a JSON object"),
    };
    let name = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Invalid("matrix needs a \"field\" string".into()))?;
    let p = obj.get("p").and_then(Value::as_u64);
    let field = field_from_parts(name, p, eps_rel)?;
    let rows_v = obj
        .get("rows")
        .and_then(Value::as_array)
        .ok_or_else(|| JsonError::Invalid("matrix needs a \"rows\" array".into()))?;
    if rows_v.is_empty() {
        return invalid("matrix needs at least one row");
    }
    let mut rows: Vec<Vec<Scalar>> = Vec::with_capacity(rows_v.len());
    let mut width = None;
    for (i, row_v) in rows_v.iter().enumerate() {
        let entries = row_v
            .as_array()
            .ok_or_else(|| JsonError::Invalid(format!("row {i} is not an array")))?;
        match width {
            None => width = Some(entries.len()),
            Some(w) if w != entries.len() => {
                return invalid(format!("row {i} has {} entries, expected {w}", entries.len()))
            }
            _ => {}
        }
        let row: Result<Vec<Scalar>, JsonError> =
            entries.iter().map(|e| scalar_from_value(e, field)).collect();
        rows.push(row?);
    }
    if width == Some(0) {
        return invalid("rows must not be empty");
    }
    Matrix::from_scalar_rows(field, rows).map_err(|e| JsonError::Invalid(e.to_string()))
}

/// A parsed `{a, b, c}` or `{a, b, c, d}` file.
#[derive(Debug, Clone)]
pub enum ElementsInput {
    Quadruple(Quadruple),
    Triple(Triple),
}

pub fn elements_from_value(v: &Value, eps_rel: f64) -> Result<ElementsInput, JsonError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return invalid("input must be a JSON object with keys a, b, c and optionally d"),
    };
    let get = |key: &str| -> Result<Matrix, JsonError> {
        let m = obj
            .get(key)
            .ok_or_else(|| JsonError::Invalid(format!("missing element \"{key}\"")))?;
        matrix_from_value(m, eps_rel)
    };
    let a = get("a")?;
    let b = get("b")?;
    let c = get("c")?;
    if obj.contains_key("d") {
        let d = get("d")?;
        Quadruple::new(a, b, c, d)
            .map(ElementsInput::Quadruple)
            .map_err(|e| JsonError::Invalid(e.to_string()))
    } else {
        Triple::new(a, b, c)
            .map(ElementsInput::Triple)
            .map_err(|e| JsonError::Invalid(e.to_string()))
    }
}

pub fn quadruple_to_value(q: &Quadruple) -> Result<Value, JsonError> {
    Ok(json!({
        "a": matrix_to_value(&q.a)?,
        "b": matrix_to_value(&q.b)?,
        "c": matrix_to_value(&q.c)?,
        "d": matrix_to_value(&q.d)?,
    }))
}

pub fn triple_to_value(t: &Triple) -> Result<Value, JsonError> {
    Ok(json!({
        "a": matrix_to_value(&t.a)?,
        "b": matrix_to_value(&t.b)?,
        "c": matrix_to_value(&t.c)?,
    }))
}

pub fn genspec_to_value(s: &GenSpec) -> Value {
    let (name, p) = field_to_parts(s.field);
    let mut obj = Map::new();
    obj.insert("strategy".into(), Value::String(s.strategy.label().into()));
    obj.insert("field".into(), Value::String(name.into()));
    if let Some(p) = p {
        obj.insert("p".into(), Value::Number(p.into()));
    }
    obj.insert("dim".into(), Value::Number(s.dim.into()));
    obj.insert("seed".into(), Value::Number(s.seed.into()));
    obj.insert("entry_bound".into(), Value::Number(s.entry_bound.into()));
    Value::Object(obj)
}

pub fn genspec_from_value(v: &Value, eps_rel: f64) -> Result<GenSpec, JsonError> {
    let obj = match v.as_object() {
        Some(o) => o,
        None => return invalid("generator spec must be a JSON object"),
    };
    let strategy_s = obj
        .get("strategy")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Invalid("spec needs a \"strategy\" string".into()))?;
    let strategy = Strategy::parse(strategy_s)
        .ok_or_else(|| JsonError::Invalid(format!("unknown strategy \"{strategy_s}\"")))?;
    let field_s = obj
        .get("field")
        .and_then(Value::as_str)
        .ok_or_else(|| JsonError::Invalid("spec needs a \"field\" string".into()))?;
    let field = field_from_parts(field_s, obj.get("p").and_then(Value::as_u64), eps_rel)?;
    let dim = obj
        .get("dim")
        .and_then(Value::as_u64)
        .ok_or_else(|| JsonError::Invalid("spec needs an integer \"dim\"".into()))?
        as usize;
    let seed = obj.get("seed").and_then(Value::as_u64).unwrap_or(0);
    let entry_bound = obj.get("entry_bound").and_then(Value::as_i64).unwrap_or(3);
    Ok(GenSpec { strategy, field, dim, seed, entry_bound })
}
