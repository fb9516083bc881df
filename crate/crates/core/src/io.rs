//! JSON input for tableaux, weight arrays and sorting networks.
//!
//! Tableaux are `{"shape": [3, 2, 1], "rows": [[...], [...], [...]]}` with
//! `shape` optional; networks are `{"n": 4, "word": [...]}`.

use serde::de::DeserializeOwned;
use serde_json::Value;

use crate::combinatorics::{SortingNetwork, StandardTableau, Tableau};
use crate::error::{invalid, Error, Result};

/// A weight array with integer or real entries, kept apart so that the
/// integer case is processed exactly.
#[derive(Debug, Clone, PartialEq)]
pub enum WeightInput {
    Integer(Tableau<u64>),
    Real(Tableau<f64>),
}

fn parse_value(text: &str) -> Result<Value> {
    serde_json::from_str(text).map_err(|e| Error::InvalidArgument(format!("malformed JSON: {e}")))
}

fn convert<T: DeserializeOwned>(value: Value, what: &str) -> Result<T> {
    serde_json::from_value(value).map_err(|e| Error::InvalidArgument(format!("invalid {what}: {e}")))
}

fn rows_of(value: &Value) -> Result<&Vec<Value>> {
    match value.get("rows") {
        Some(Value::Array(rows)) => Ok(rows),
        Some(_) => invalid("\"rows\" must be an array of arrays"),
        None => invalid("missing field \"rows\""),
    }
}

/// Parses a weight tableau; entries must be non-negative. All-integer
/// input is read as integers, anything else as reals.
pub fn parse_weights(text: &str) -> Result<WeightInput> {
    let value = parse_value(text)?;
    let mut integral = true;
    for (i, row) in rows_of(&value)?.iter().enumerate() {
        let Value::Array(row) = row else {
            return invalid(format!("rows[{i}] is not an array"));
        };
        for (j, entry) in row.iter().enumerate() {
            let Some(x) = entry.as_f64() else {
                return invalid(format!("rows[{i}][{j}] is not a number: {entry}"));
            };
            if !(x >= 0.0) || !x.is_finite() {
                return invalid(format!("rows[{i}][{j}] = {entry} is not a non-negative finite number"));
            }
            integral &= entry.is_u64();
        }
    }
    if integral {
        convert(value, "tableau").map(WeightInput::Integer)
    } else {
        convert(value, "tableau").map(WeightInput::Real)
    }
}

/// Parses a standard tableau and checks that it is standard.
pub fn parse_standard_tableau(text: &str) -> Result<StandardTableau> {
    let value = parse_value(text)?;
    for (i, row) in rows_of(&value)?.iter().enumerate() {
        if let Value::Array(row) = row {
            if let Some((j, e)) = row.iter().enumerate().find(|(_, e)| !e.is_u64()) {
                return invalid(format!("rows[{i}][{j}] = {e} is not a positive integer"));
            }
        }
    }
    let t: StandardTableau = convert(value, "tableau")?;
    t.check_standard()?;
    Ok(t)
}

pub fn parse_network(text: &str) -> Result<SortingNetwork> {
    convert(parse_value(text)?, "sorting network")
}
