//! `{"values": {"v1": 2, "v2": 0}}` files for configurations and parking
//! functions.

use serde_json::{Map, Value};
use thiserror::Error;

use crate::graph::RootedMultigraph;

#[derive(Debug, Clone, PartialEq, Eq, Error)]
pub enum ValuesError {
    #[error("malformed values file: {0}")]
    Parse(String),
    #[error("no value given for vertex `{0}`")]
    Missing(String),
    #[error("`{0}` is not a non-sink vertex of the graph")]
    Extra(String),
    #[error("value at `{0}` must be an integer")]
    NotInteger(String),
}

/// Reads per-vertex integer values, returned in non-sink ordinal order.
pub fn parse_values(graph: &RootedMultigraph, text: &str) -> Result<Vec<i64>, ValuesError> {
    let root: Value = serde_json::from_str(text).map_err(|e| ValuesError::Parse(e.to_string()))?;
    let map = root
        .as_object()
        .and_then(|o| {
            if o.len() == 1 {
                o.get("values")
            } else {
                None
            }
        })
        .and_then(Value::as_object)
        .ok_or_else(|| ValuesError::Parse("expected an object {\"values\": {...}}".into()))?;
    for name in map.keys() {
        let known = graph
            .vertex(name)
            .ok()
            .is_some_and(|v| v != graph.sink());
        if !known {
            return Err(ValuesError::Extra(name.clone()));
        }
    }
    (0..graph.size())
        .map(|i| {
            let name = graph.ordinal_name(i);
            let value = map.get(name).ok_or_else(|| ValuesError::Missing(name.to_owned()))?;
            value.as_i64().ok_or_else(|| ValuesError::NotInteger(name.to_owned()))
        })
        .collect()
}

/// Writes values (in ordinal order) as a values file, keys in declaration
/// order.
pub fn values_to_json(graph: &RootedMultigraph, values: &[i64]) -> String {
    let mut map = Map::new();
    for (i, v) in values.iter().enumerate() {
        map.insert(graph.ordinal_name(i).to_owned(), Value::from(*v));
    }
    let mut root = Map::new();
    root.insert("values".into(), Value::Object(map));
    serde_json::to_string_pretty(&Value::Object(root)).expect("values serialise")
}

/// `(a,b,c)` rendering used throughout the CLI and reports.
pub fn tuple_string(values: &[i64]) -> String {
    let inner: Vec<String> = values.iter().map(i64::to_string).collect();
    format!("({})", inner.join(","))
}
