//! The published schemas, compiled once per process.

use std::collections::HashMap;

use jsonschema::{Retrieve, Uri, Validator};
use serde_json::Value;

const BASE: &str = "https://convexa.invalid/schemas/v1/";

const SOURCES: [(&str, &str); 5] = [
    ("space.schema.json", include_str!("../../../schemas/space.schema.json")),
    ("path.schema.json", include_str!("../../../schemas/path.schema.json")),
    ("map.schema.json", include_str!("../../../schemas/map.schema.json")),
    ("region.schema.json", include_str!("../../../schemas/region.schema.json")),
    ("report.schema.json", include_str!("../../../schemas/report.schema.json")),
];

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum Kind {
    Space,
    Path,
    Map,
    Region,
    Report,
}

impl Kind {
    pub fn file(self) -> &'static str {
        SOURCES[self as usize].0
    }
}

fn parsed(i: usize) -> Value {
    serde_json::from_str(SOURCES[i].1).expect("shipped schemas are valid JSON")
}

struct Shipped(HashMap<String, Value>);

impl Retrieve for Shipped {
    fn retrieve(&self, uri: &Uri<String>) -> Result<Value, Box<dyn std::error::Error + Send + Sync>> {
        let key = uri.as_str().split('#').next().unwrap_or_default();
        self.0.get(key).cloned().ok_or_else(|| format!("no shipped schema at {uri}").into())
    }
}

fn validator(kind: Kind) -> Validator {
    let all = (0..SOURCES.len()).map(|i| (format!("{BASE}{}", SOURCES[i].0), parsed(i))).collect();
    jsonschema::options()
        .with_retriever(Shipped(all))
        .build(&parsed(kind as usize))
        .expect("shipped schemas compile")
}

/// Up to five violations, each prefixed by its instance location.
pub fn check(kind: Kind, doc: &Value) -> Result<(), Vec<String>> {
    let v = validator(kind);
    let errs: Vec<String> = v
        .iter_errors(doc)
        .take(5)
        .map(|e| {
            let at = e.instance_path().to_string();
            format!("{}: {e}", if at.is_empty() { "/" } else { &at })
        })
        .collect();
    if errs.is_empty() {
        Ok(())
    } else {
        Err(errs)
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use serde_json::json;

    #[test]
    fn all_schemas_compile() {
        for k in [Kind::Space, Kind::Path, Kind::Map, Kind::Region, Kind::Report] {
            validator(k);
        }
    }

    #[test]
    fn rationals_must_be_strings() {
        assert!(check(Kind::Space, &json!({"kind": "interval", "a": "0", "b": "1/2"})).is_ok());
        assert!(check(Kind::Space, &json!({"kind": "interval", "a": 0, "b": "1"})).is_err());
        assert!(check(Kind::Space, &json!({"kind": "interval", "a": "0", "b": "1/0"})).is_err());
    }

    #[test]
    fn map_refers_to_space() {
        let m = json!({"target": {"kind": "interval", "a": "0", "b": "1"}, "values": ["0", "1"], "edges": [[0, 1]]});
        assert!(check(Kind::Map, &m).is_ok());
        let bad = json!({"target": {"kind": "circle"}, "values": ["0"]});
        assert!(check(Kind::Map, &bad).is_err());
    }
}
