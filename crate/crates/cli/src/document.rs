//! JSON encoding of chart parameters.
//!
//! ```json
//! {"k": 2, "type": "type2", "X": [["0","-1"],["1","0"]], "Y": [["1","0"],["0","1"]]}
//! {"k": 2, "type": "type1", "x": ["1","0"], "Y": [["1","0"],["0","1"]], "z": ["1","0"]}
//! ```
//!
//! Rationals are strings `"p/q"` or `"p"`; bare JSON integers are accepted
//! on input. Output is always reduced and keys come out sorted.

use nilaffine::algebra::{format_rational, int, parse_rational, Matrix, Rational};
use nilaffine::hom::{HomParam, Type1Param, Type2Param};
use serde_json::{json, Map, Value};

#[derive(Debug, PartialEq, Eq)]
pub struct DocError(pub String);

impl std::fmt::Display for DocError {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.0)
    }
}

impl From<nilaffine::Error> for DocError {
    fn from(e: nilaffine::Error) -> Self {
        DocError(e.to_string())
    }
}

fn err<T>(msg: impl Into<String>) -> Result<T, DocError> {
    Err(DocError(msg.into()))
}

fn rational(v: &Value, what: &str) -> Result<Rational, DocError> {
    match v {
        Value::String(s) => parse_rational(s).map_err(|_| DocError(format!("{what}: bad rational {s:?}"))),
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(int(i)),
            None => err(format!("{what}: numbers must be integers; write fractions as \"p/q\"")),
        },
        _ => err(format!("{what}: expected a rational string")),
    }
}

fn vector(v: Option<&Value>, k: usize, what: &str) -> Result<Vec<Rational>, DocError> {
    let Some(Value::Array(items)) = v else {
        return err(format!("{what}: expected an array"));
    };
    if items.len() != k {
        return err(format!("{what}: expected length {k}, got {}", items.len()));
    }
    items.iter().map(|x| rational(x, what)).collect()
}

fn matrix(v: Option<&Value>, k: usize, what: &str) -> Result<Matrix, DocError> {
    let Some(Value::Array(rows)) = v else {
        return err(format!("{what}: expected an array of rows"));
    };
    if rows.len() != k {
        return err(format!("{what}: expected {k} rows, got {}", rows.len()));
    }
    let rows = rows
        .iter()
        .map(|r| vector(Some(r), k, what))
        .collect::<Result<Vec<_>, _>>()?;
    Ok(Matrix::from_rows(rows)?)
}

fn check_keys(obj: &Map<String, Value>, allowed: &[&str]) -> Result<(), DocError> {
    match obj.keys().find(|key| !allowed.contains(&key.as_str())) {
        Some(key) => err(format!("unexpected field {key:?}")),
        None => Ok(()),
    }
}

pub fn parse_param(v: &Value) -> Result<HomParam, DocError> {
    let Value::Object(obj) = v else {
        return err("expected a parameter object");
    };
    let k = match obj.get("k").and_then(Value::as_u64) {
        Some(k) if k >= 1 => k as usize,
        _ => return err("k: expected a positive integer"),
    };
    match obj.get("type").and_then(Value::as_str) {
        Some("type1") => {
            check_keys(obj, &["k", "type", "x", "Y", "z"])?;
            let x = vector(obj.get("x"), k, "x")?;
            let y = matrix(obj.get("Y"), k, "Y")?;
            let z = vector(obj.get("z"), k, "z")?;
            Ok(Type1Param::new(x, y, z)?.into())
        }
        Some("type2") => {
            check_keys(obj, &["k", "type", "X", "Y"])?;
            let x = matrix(obj.get("X"), k, "X")?;
            let y = matrix(obj.get("Y"), k, "Y")?;
            Ok(Type2Param::new(x, y)?.into())
        }
        _ => err("type: expected \"type1\" or \"type2\""),
    }
}

pub fn parse_param_str(s: &str) -> Result<HomParam, DocError> {
    let v: Value = serde_json::from_str(s).map_err(|e| DocError(format!("malformed JSON: {e}")))?;
    parse_param(&v)
}

pub fn rational_json(q: &Rational) -> Value {
    Value::String(format_rational(q))
}

pub fn vector_json(v: &[Rational]) -> Value {
    Value::Array(v.iter().map(rational_json).collect())
}

pub fn matrix_json(m: &Matrix) -> Value {
    Value::Array(m.to_rows().iter().map(|r| vector_json(r)).collect())
}

pub fn param_json(p: &HomParam) -> Value {
    match p {
        HomParam::Type1(p) => json!({
            "k": p.k(),
            "type": "type1",
            "x": vector_json(p.x()),
            "Y": matrix_json(p.y()),
            "z": vector_json(p.z()),
        }),
        HomParam::Type2(p) => json!({
            "k": p.k(),
            "type": "type2",
            "X": matrix_json(p.x()),
            "Y": matrix_json(p.y()),
        }),
    }
}
