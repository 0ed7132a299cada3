//! Input documents (JSON).
//!
//! ```json
//! { "complex": { "facets": [[1, 2, 3], [1, 2, 4]] } }
//! { "poset": { "cells": [ { "id": "a", "rank": 2, "facets": ["u", "v"] } ] } }
//! ```
//!
//! Vertex labels may be numbers or strings. In the `poset` form, rank-1
//! cells that are only referenced are created automatically.

use serde::Deserialize;

use crate::poset::{CellRecord, PosetError, SimplicialPoset};

#[derive(Clone, Debug, Deserialize)]
#[serde(untagged)]
pub enum Label {
    Int(i64),
    Text(String),
}

impl Label {
    pub fn into_string(self) -> String {
        match self {
            Label::Int(v) => v.to_string(),
            Label::Text(s) => s,
        }
    }
}

#[derive(Clone, Debug, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct ComplexSection {
    pub facets: Vec<Vec<Label>>,
}

#[derive(Clone, Debug, Deserialize)]
struct RawCell {
    id: Label,
    rank: usize,
    #[serde(default)]
    facets: Vec<Label>,
}

#[derive(Clone, Debug, Deserialize)]
struct PosetSection {
    cells: Vec<RawCell>,
}

#[derive(Clone, Debug, Deserialize)]
struct Document {
    #[serde(default)]
    name: Option<String>,
    #[serde(default)]
    complex: Option<ComplexSection>,
    #[serde(default)]
    poset: Option<PosetSection>,
}

/// A parsed and validated input.
#[derive(Clone, Debug)]
pub struct LoadedPoset {
    pub name: Option<String>,
    pub poset: SimplicialPoset,
}

/// Parses and validates a poset document.
pub fn load_poset(text: &str) -> Result<LoadedPoset, PosetError> {
    if text.trim().is_empty() {
        return Err(PosetError::Parse("empty document".into()));
    }
    let doc: Document = serde_json::from_str(text).map_err(|e| PosetError::Parse(e.to_string()))?;
    let poset = match (doc.complex, doc.poset) {
        (Some(c), None) => {
            let facets: Vec<Vec<String>> =
                c.facets.into_iter().map(|f| f.into_iter().map(Label::into_string).collect()).collect();
            SimplicialPoset::from_facets(&facets)?
        }
        (None, Some(p)) => {
            let records: Vec<CellRecord> = p
                .cells
                .into_iter()
                .map(|c| CellRecord {
                    id: c.id.into_string(),
                    rank: c.rank,
                    facets: c.facets.into_iter().map(Label::into_string).collect(),
                })
                .collect();
            SimplicialPoset::from_cells(&records)?
        }
        (Some(_), Some(_)) => {
            return Err(PosetError::Parse("give either `complex` or `poset`, not both".into()))
        }
        (None, None) => return Err(PosetError::Parse("missing `complex` or `poset` section".into())),
    };
    Ok(LoadedPoset { name: doc.name, poset })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn loads_both_forms() {
        let c = load_poset(r#"{"complex": {"facets": [[1,2],[2,"x"],[1,"x"]]}}"#).unwrap();
        assert_eq!(c.poset.f_vector().0, vec![1, 3, 3]);
        let p = load_poset(
            r#"{"name": "circle", "poset": {"cells": [
                {"id": "a", "rank": 2, "facets": ["u", "v"]},
                {"id": "b", "rank": 2, "facets": ["u", "v"]}]}}"#,
        )
        .unwrap();
        assert_eq!(p.name.as_deref(), Some("circle"));
        assert_eq!(p.poset.f_vector().0, vec![1, 2, 2]);
    }

    #[test]
    fn rejects_bad_documents() {
        assert!(matches!(load_poset(""), Err(PosetError::Parse(_))));
        assert!(matches!(load_poset("{"), Err(PosetError::Parse(_))));
        assert!(matches!(load_poset("{}"), Err(PosetError::Parse(_))));
        assert!(matches!(load_poset(r#"{"complex": {"facets": []}}"#), Err(PosetError::Empty)));
    }
}
