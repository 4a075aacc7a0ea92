//! The JSON poset document.
//!
//! ```json
//! {
//!   "schema_version": "1",
//!   "elements": ["a", "b"],
//!   "relations": [["a", "b"]],
//!   "chains": [["a", "b"]],
//!   "metadata": {"family": "counterexample", "p": 6, "q": 2}
//! }
//! ```
//!
//! `chains` and `metadata` are optional. Serialization is canonical: keys in
//! the order above, elements and relations sorted, so equal posets give equal
//! bytes.

use std::collections::HashSet;

use poset_queues::{ChainDecomposition, ConstructionBundle, Poset, PosetError};
use serde::Serialize;
use serde_json::{Map, Value};
use thiserror::Error;

pub const SCHEMA_VERSION: &str = "1";

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct PosetDocument {
    pub schema_version: String,
    pub elements: Vec<String>,
    pub relations: Vec<(String, String)>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub chains: Option<Vec<Vec<String>>>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub metadata: Option<Map<String, Value>>,
}

/// A malformed document; `path` is a JSON path such as `$.relations[3][1]`.
#[derive(Debug, Clone, PartialEq, Eq, Error)]
#[error("{path}: {message}")]
pub struct SchemaError {
    pub path: String,
    pub message: String,
}

fn schema_err(path: impl Into<String>, message: impl Into<String>) -> SchemaError {
    SchemaError {
        path: path.into(),
        message: message.into(),
    }
}

fn string_at(v: &Value, path: &str) -> Result<String, SchemaError> {
    v.as_str()
        .map(str::to_owned)
        .ok_or_else(|| schema_err(path, "expected a string"))
}

fn array_at<'v>(v: &'v Value, path: &str) -> Result<&'v Vec<Value>, SchemaError> {
    v.as_array().ok_or_else(|| schema_err(path, "expected an array"))
}

/// Parses and validates a document. Relations and chains may only mention
/// listed elements.
pub fn parse_document(bytes: &[u8]) -> Result<PosetDocument, SchemaError> {
    let root: Value = serde_json::from_slice(bytes).map_err(|e| schema_err("$", format!("invalid JSON: {e}")))?;
    let obj = root.as_object().ok_or_else(|| schema_err("$", "expected an object"))?;
    for key in obj.keys() {
        if !matches!(key.as_str(), "schema_version" | "elements" | "relations" | "chains" | "metadata") {
            return Err(schema_err(format!("$.{key}"), "unknown key"));
        }
    }
    let version = obj
        .get("schema_version")
        .ok_or_else(|| schema_err("$.schema_version", "missing"))?;
    let version = string_at(version, "$.schema_version")?;
    if version != SCHEMA_VERSION {
        return Err(schema_err(
            "$.schema_version",
            format!("unsupported version {version:?}, expected {SCHEMA_VERSION:?}"),
        ));
    }

    let raw = obj.get("elements").ok_or_else(|| schema_err("$.elements", "missing"))?;
    let mut elements = Vec::new();
    let mut known = HashSet::new();
    for (i, e) in array_at(raw, "$.elements")?.iter().enumerate() {
        let path = format!("$.elements[{i}]");
        let name = string_at(e, &path)?;
        if !known.insert(name.clone()) {
            return Err(schema_err(path, format!("duplicate element {name:?}")));
        }
        elements.push(name);
    }
    let member = |v: &Value, path: &str| -> Result<String, SchemaError> {
        let name = string_at(v, path)?;
        if known.contains(&name) {
            Ok(name)
        } else {
            Err(schema_err(path, format!("unknown element {name:?}")))
        }
    };

    let raw = obj.get("relations").ok_or_else(|| schema_err("$.relations", "missing"))?;
    let mut relations = Vec::new();
    for (i, r) in array_at(raw, "$.relations")?.iter().enumerate() {
        let path = format!("$.relations[{i}]");
        let pair = array_at(r, &path)?;
        if pair.len() != 2 {
            return Err(schema_err(path, format!("expected a pair, got {} entries", pair.len())));
        }
        relations.push((member(&pair[0], &format!("{path}[0]"))?, member(&pair[1], &format!("{path}[1]"))?));
    }

    let chains = match obj.get("chains") {
        None | Some(Value::Null) => None,
        Some(raw) => {
            let mut chains = Vec::new();
            for (i, c) in array_at(raw, "$.chains")?.iter().enumerate() {
                let path = format!("$.chains[{i}]");
                let chain = array_at(c, &path)?
                    .iter()
                    .enumerate()
                    .map(|(j, v)| member(v, &format!("{path}[{j}]")))
                    .collect::<Result<Vec<_>, _>>()?;
                chains.push(chain);
            }
            Some(chains)
        }
    };

    let metadata = match obj.get("metadata") {
        None | Some(Value::Null) => None,
        Some(Value::Object(m)) => Some(m.clone()),
        Some(_) => return Err(schema_err("$.metadata", "expected an object")),
    };

    Ok(PosetDocument {
        schema_version: version,
        elements,
        relations,
        chains,
        metadata,
    })
}

/// Canonical pretty-printed bytes, newline terminated.
pub fn serialize_document(doc: &PosetDocument) -> Vec<u8> {
    let mut canon = doc.clone();
    canon.elements.sort();
    canon.relations.sort();
    canon.relations.dedup();
    let mut out = serde_json::to_vec_pretty(&canon).expect("documents always serialize");
    out.push(b'\n');
    out
}

#[derive(Debug, Error)]
pub enum DocumentError {
    #[error(transparent)]
    Schema(#[from] SchemaError),
    #[error(transparent)]
    Poset(#[from] PosetError),
}

impl PosetDocument {
    /// Builds the poset (reducing transitive relations) and, if present, the
    /// chain decomposition.
    pub fn to_poset(&self) -> Result<(Poset, Option<ChainDecomposition>), DocumentError> {
        let pairs: Vec<(&str, &str)> = self.relations.iter().map(|(u, v)| (u.as_str(), v.as_str())).collect();
        let names: Vec<&str> = self.elements.iter().map(String::as_str).collect();
        let poset = Poset::build(&names, &pairs)?;
        let chains = self
            .chains
            .as_ref()
            .map(|c| ChainDecomposition::from_names(&poset, c))
            .transpose()?;
        Ok((poset, chains))
    }

    /// Document of the cover relations of `poset`.
    pub fn from_poset(poset: &Poset, chains: Option<&ChainDecomposition>, metadata: Option<Map<String, Value>>) -> Self {
        let name = |v: usize| poset.name(v).to_owned();
        PosetDocument {
            schema_version: SCHEMA_VERSION.to_owned(),
            elements: poset.names().to_vec(),
            relations: poset.cover_edges().iter().map(|&(u, v)| (name(u), name(v))).collect(),
            chains: chains.map(|c| c.chains().iter().map(|ch| ch.iter().map(|&v| name(v)).collect()).collect()),
            metadata,
        }
    }

    /// Records the family and parameters in `metadata`.
    pub fn from_bundle(bundle: &ConstructionBundle) -> Self {
        let mut meta = Map::new();
        meta.insert("family".into(), bundle.family.as_str().into());
        for &(k, v) in &bundle.params {
            meta.insert(k.into(), v.into());
        }
        if let Some(e) = bundle.expected_rainbow {
            meta.insert("expected_rainbow".into(), e.into());
        }
        if let Some(ext) = &bundle.prescribed_extension {
            meta.insert("prescribed_extension".into(), ext.names(&bundle.poset).into());
        }
        Self::from_poset(&bundle.poset, Some(&bundle.chains), Some(meta))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    fn err_path(s: &str) -> String {
        parse_document(s.as_bytes()).unwrap_err().path
    }

    #[test]
    fn minimal_document() {
        let d = parse_document(br#"{"schema_version":"1","elements":["a"],"relations":[]}"#).unwrap();
        let (p, c) = d.to_poset().unwrap();
        assert_eq!(p.len(), 1);
        assert!(c.is_none());
    }

    #[test]
    fn error_paths() {
        assert_eq!(err_path("[]"), "$");
        assert_eq!(err_path(r#"{"schema_version":"2","elements":[],"relations":[]}"#), "$.schema_version");
        assert_eq!(err_path(r#"{"schema_version":"1","elements":["a","a"],"relations":[]}"#), "$.elements[1]");
        assert_eq!(
            err_path(r#"{"schema_version":"1","elements":["a","b"],"relations":[["a","b"],["a","b"],["b","a"],["a"]]}"#),
            "$.relations[3]"
        );
        assert_eq!(
            err_path(r#"{"schema_version":"1","elements":["a","b"],"relations":[["a","x"]]}"#),
            "$.relations[0][1]"
        );
        assert_eq!(err_path(r#"{"schema_version":"1","elements":[],"relations":[],"extra":1}"#), "$.extra");
        assert_eq!(err_path(r#"{"schema_version":"1","elements":["a"],"relations":[],"chains":[[1]]}"#), "$.chains[0][0]");
    }

    #[test]
    fn serialization_is_canonical() {
        let d = parse_document(
            br#"{"metadata":{"z":1,"a":2},"relations":[["b","c"],["a","b"]],"elements":["c","b","a"],"schema_version":"1"}"#,
        )
        .unwrap();
        let once = serialize_document(&d);
        let twice = serialize_document(&parse_document(&once).unwrap());
        assert_eq!(once, twice);
        let text = String::from_utf8(once).unwrap();
        let order: Vec<usize> = ["schema_version", "elements", "relations", "metadata"]
            .iter()
            .map(|k| text.find(k).unwrap())
            .collect();
        assert!(order.windows(2).all(|w| w[0] < w[1]));
    }
}
