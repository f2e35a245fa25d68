//! JSON formats for matrices, interval boxes and networks.
//!
//! Entries are JSON integers or strings holding an expression such as
//! `"1/2"` or `"a - c"`. Non-integer JSON numbers are rejected so that no
//! value passes through floating point.

use std::collections::HashMap;

use num_traits::ToPrimitive;
use serde::Deserialize;
use serde_json::{json, Value};

use crate::crn::{Network, Vertex};
use crate::error::{Error, Result};
use crate::feasibility::{Interval, IntervalBox};
use crate::matrix::ExactMatrix;
use crate::scalars::{parse_scalar, Rational, Scalar};
use crate::sign_vector::SignVector;

fn from_json<'a, T: Deserialize<'a>>(text: &'a str) -> Result<T> {
    serde_json::from_str(text)
        .map_err(|e| Error::Invalid(format!("line {} column {}: {e}", e.line(), e.column())))
}

fn entry(value: &Value, variables: &[&str], context: &dyn Fn() -> String) -> Result<Scalar> {
    match value {
        Value::Number(n) => match n.as_i64() {
            Some(i) => Ok(Scalar::int(i)),
            None => Err(Error::Invalid(format!(
                "{}: {n} is not an integer; write fractions as strings like \"1/2\"",
                context()
            ))),
        },
        Value::String(s) => parse_scalar(s, variables).map_err(|e| Error::Invalid(format!("{}: {e}", context()))),
        other => Err(Error::Invalid(format!("{}: expected a number or a string, found {other}", context()))),
    }
}

fn rational_entry(value: &Value, context: &dyn Fn() -> String) -> Result<Rational> {
    match entry(value, &[], context)? {
        Scalar::Rational(q) => Ok(q),
        Scalar::Polynomial(_) => unreachable!("no variables declared"),
    }
}

#[derive(Deserialize)]
#[serde(untagged)]
enum MatrixFile {
    Bare(Vec<Vec<Value>>),
    Full {
        #[serde(default)]
        variables: Vec<String>,
        rows: Vec<Vec<Value>>,
        #[serde(default)]
        columns: Option<usize>,
    },
}

/// `{"variables": ["a"], "rows": [["1", "a"], [0, 2]]}` or a bare array of rows.
/// An empty row list needs `"columns"`.
pub fn parse_matrix_json(text: &str) -> Result<ExactMatrix> {
    parse_matrix_json_declared(text).map(|(m, _)| m)
}

/// [`parse_matrix_json`] together with the declared variable names.
pub fn parse_matrix_json_declared(text: &str) -> Result<(ExactMatrix, Vec<String>)> {
    let (variables, rows, columns) = match from_json::<MatrixFile>(text)? {
        MatrixFile::Bare(rows) => (Vec::new(), rows, None),
        MatrixFile::Full { variables, rows, columns } => (variables, rows, columns),
    };
    let vars: Vec<&str> = variables.iter().map(String::as_str).collect();
    let n = match (rows.first(), columns) {
        (Some(r), _) => r.len(),
        (None, Some(c)) => c,
        (None, None) => return Err(Error::Invalid("a matrix without rows needs \"columns\"".into())),
    };
    let parsed = rows
        .iter()
        .enumerate()
        .map(|(i, row)| {
            if row.len() != n {
                return Err(Error::DimensionMismatch(format!("row {} has {} entries, expected {n}", i + 1, row.len())));
            }
            row.iter()
                .enumerate()
                .map(|(j, v)| entry(v, &vars, &|| format!("row {} column {}", i + 1, j + 1)))
                .collect()
        })
        .collect::<Result<Vec<_>>>()?;
    Ok((ExactMatrix::from_rows(parsed, n)?, variables))
}

#[derive(Deserialize)]
struct IntervalEntry {
    #[serde(default)]
    lower: Option<Value>,
    #[serde(default)]
    upper: Option<Value>,
    #[serde(default = "closed_default")]
    lower_closed: bool,
    #[serde(default = "closed_default")]
    upper_closed: bool,
}

fn closed_default() -> bool {
    true
}

fn endpoint(value: &Option<Value>, infinite: &[&str], context: &dyn Fn() -> String) -> Result<Option<Rational>> {
    match value {
        None | Some(Value::Null) => Ok(None),
        Some(Value::String(s)) if infinite.contains(&s.trim()) => Ok(None),
        Some(v) => rational_entry(v, context).map(Some),
    }
}

/// `[{"lower": "2", "upper": "5", "lower_closed": true, "upper_closed": false}, ...]`.
/// Missing or `null` endpoints, `"-oo"` and `"+oo"` are infinite; closedness
/// defaults to closed.
pub fn parse_intervals_json(text: &str) -> Result<IntervalBox> {
    let entries: Vec<IntervalEntry> = from_json(text)?;
    entries
        .iter()
        .enumerate()
        .map(|(i, e)| {
            let ctx = || format!("interval {}", i + 1);
            let lower = endpoint(&e.lower, &["-oo", "-inf"], &ctx)?;
            let upper = endpoint(&e.upper, &["+oo", "oo", "inf", "+inf"], &ctx)?;
            Interval::new(lower, upper, e.lower_closed, e.upper_closed)
                .map_err(|err| Error::Invalid(format!("interval {}: {err}", i + 1)))
        })
        .collect::<Result<Vec<_>>>()
        .map(IntervalBox::new)
}

#[derive(Deserialize)]
struct NetworkFile {
    species: Vec<String>,
    vertices: Vec<VertexEntry>,
    edges: Vec<(Value, Value)>,
    #[serde(default)]
    variables: Vec<String>,
}

#[derive(Deserialize)]
struct VertexEntry {
    id: Value,
    y: Vec<Value>,
    #[serde(default)]
    ytilde: Option<Vec<Value>>,
}

fn vertex_id(v: &Value) -> Result<String> {
    match v {
        Value::String(s) => Ok(s.clone()),
        Value::Number(n) => Ok(n.to_string()),
        other => Err(Error::Invalid(format!("vertex id {other} is neither a string nor a number"))),
    }
}

/// A network and its declared parameter names.
pub fn parse_network_json(text: &str) -> Result<(Network, Vec<String>)> {
    let file: NetworkFile = from_json(text)?;
    let vars: Vec<&str> = file.variables.iter().map(String::as_str).collect();
    let mut vertices = Vec::with_capacity(file.vertices.len());
    for v in &file.vertices {
        let id = vertex_id(&v.id)?;
        let y = v
            .y
            .iter()
            .enumerate()
            .map(|(s, x)| rational_entry(x, &|| format!("vertex {id}, y entry {}", s + 1)))
            .collect::<Result<Vec<_>>>()?;
        let ytilde = match &v.ytilde {
            None => None,
            Some(t) => Some(
                t.iter()
                    .enumerate()
                    .map(|(s, x)| entry(x, &vars, &|| format!("vertex {id}, ytilde entry {}", s + 1)))
                    .collect::<Result<Vec<_>>>()?,
            ),
        };
        vertices.push(Vertex { id, y, ytilde });
    }
    let position: HashMap<&str, usize> = vertices.iter().enumerate().map(|(k, v)| (v.id.as_str(), k)).collect();
    let edges = file
        .edges
        .iter()
        .map(|(from, to)| {
            let lookup = |v: &Value| -> Result<usize> {
                let id = vertex_id(v)?;
                position
                    .get(id.as_str())
                    .copied()
                    .ok_or_else(|| Error::InvalidNetwork(format!("edge refers to unknown vertex {id}")))
            };
            Ok((lookup(from)?, lookup(to)?))
        })
        .collect::<Result<Vec<_>>>()?;
    let network = Network::new(file.species, vertices, edges)?;
    Ok((network, file.variables))
}

/// `"a=1/2,b=2"` as exact values.
pub fn parse_assignments(text: &str) -> Result<HashMap<String, Rational>> {
    let mut out = HashMap::new();
    for part in text.split(',').map(str::trim).filter(|p| !p.is_empty()) {
        let (name, value) = part
            .split_once('=')
            .ok_or_else(|| Error::Invalid(format!("`{part}` is not of the form name=value")))?;
        let name = name.trim();
        let value = match parse_scalar(value.trim(), &[])? {
            Scalar::Rational(q) => q,
            Scalar::Polynomial(_) => unreachable!("no variables declared"),
        };
        if out.insert(name.to_string(), value).is_some() {
            return Err(Error::Invalid(format!("`{name}` is assigned twice")));
        }
    }
    Ok(out)
}

/// Integers that fit in 64 bits become JSON numbers; everything else a string.
pub fn rational_to_json(q: &Rational) -> Value {
    if q.is_integer() {
        if let Some(i) = q.to_integer().to_i64() {
            return json!(i);
        }
    }
    json!(q.to_string())
}

pub fn scalar_to_json(s: &Scalar) -> Value {
    match s {
        Scalar::Rational(q) => rational_to_json(q),
        Scalar::Polynomial(_) => json!(s.to_string()),
    }
}

pub fn vector_to_json(v: &[Scalar]) -> Value {
    Value::Array(v.iter().map(scalar_to_json).collect())
}

pub fn sign_vector_to_json(s: &SignVector) -> Value {
    json!(s.to_compact_string())
}

pub fn matrix_to_json(m: &ExactMatrix) -> Value {
    let rows: Vec<Value> = m.rows().map(vector_to_json).collect();
    json!({ "variables": m.variables(), "rows": rows })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::scalars::rational;

    #[test]
    fn matrices() {
        let m = parse_matrix_json("[[1, 1, 2, 0], [0, 0, 1, 2]]").unwrap();
        assert_eq!(m, ExactMatrix::from_ints(&[[1, 1, 2, 0], [0, 0, 1, 2]]));
        let p = parse_matrix_json(r#"{"variables": ["a", "c"], "rows": [["1", "a - c", "1/2"]]}"#).unwrap();
        assert_eq!(p.get(0, 1).to_string(), "a - c");
        assert_eq!(p.get(0, 2), &Scalar::Rational(rational(1, 2)));
        let empty = parse_matrix_json(r#"{"rows": [], "columns": 3}"#).unwrap();
        assert_eq!((empty.n_rows(), empty.n_cols()), (0, 3));
    }

    #[test]
    fn matrix_errors() {
        assert!(parse_matrix_json("[[1, 2], [3]]").is_err());
        assert!(parse_matrix_json("[[1.5]]").is_err());
        let err = parse_matrix_json(r#"{"rows": [["b"]]}"#).unwrap_err();
        assert!(err.to_string().contains("row 1 column 1"), "{err}");
        assert!(parse_matrix_json("[[1, 2]").is_err());
    }

    #[test]
    fn intervals() {
        let text = r#"[
            {"lower": "2", "upper": "5", "lower_closed": true, "upper_closed": false},
            {"lower": 5, "upper": "+oo", "lower_closed": true, "upper_closed": false},
            {"lower": "0", "upper": "8", "lower_closed": false, "upper_closed": false},
            {"lower": "-oo", "upper": "5", "lower_closed": false, "upper_closed": true}
        ]"#;
        assert_eq!(parse_intervals_json(text).unwrap().to_string(), "[[2, 5), [5, +oo), (0, 8), (-oo, 5]]");
        assert_eq!(parse_intervals_json(r#"[{"lower": "1/2"}]"#).unwrap().to_string(), "[[1/2, +oo)]");
        assert!(parse_intervals_json(r#"[{"lower": 1, "upper": 0}]"#).is_err());
    }

    #[test]
    fn networks() {
        let text = r#"{
            "species": ["X", "Y"],
            "vertices": [{"id": 1, "y": [1, 0], "ytilde": ["a", "0"]}, {"id": 2, "y": ["0", "1"]}],
            "edges": [[1, 2]],
            "variables": ["a"]
        }"#;
        let (net, vars) = parse_network_json(text).unwrap();
        assert_eq!(vars, vec!["a".to_string()]);
        assert_eq!(net.edges(), &[(0, 1)]);
        assert_eq!(net.ytilde().get(0, 0).to_string(), "a");
        assert_eq!(net.ytilde().get(1, 1), &Scalar::int(1));
        assert!(parse_network_json(&text.replace("[[1, 2]]", "[[1, 3]]")).is_err());
        assert!(parse_network_json(&text.replace("[[1, 2]]", "[[2, 1]]")).is_err());
    }

    #[test]
    fn assignments() {
        let a = parse_assignments("a=1/2, b = 2").unwrap();
        assert_eq!(a["a"], rational(1, 2));
        assert_eq!(a["b"], rational(2, 1));
        assert!(parse_assignments("a").is_err());
        assert!(parse_assignments("a=1,a=2").is_err());
        assert!(parse_assignments("a=b").is_err());
    }

    #[test]
    fn json_numbers() {
        assert_eq!(rational_to_json(&rational(4, 1)), json!(4));
        assert_eq!(rational_to_json(&rational(-1, 2)), json!("-1/2"));
        let big = Rational::from_integer(num_bigint::BigInt::from(i64::MAX) * 4);
        assert!(rational_to_json(&big).is_string());
        let m = ExactMatrix::from_ints(&[[1, -1]]);
        assert_eq!(matrix_to_json(&m).to_string(), r#"{"rows":[[1,-1]],"variables":[]}"#);
    }
}
