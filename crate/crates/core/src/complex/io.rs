use std::collections::{BTreeMap, BTreeSet};

use serde::{Deserialize, Serialize};
use serde_json::Value;

use super::FlagComplex;
use crate::error::{Error, Result};

/// JSON interchange form of a flag complex.
///
/// Vertex tags travel in `meta.tags` as a map from vertex id to tag list.
#[derive(Clone, Debug, PartialEq, Serialize, Deserialize)]
pub struct ComplexDocument {
    pub vertices: Vec<String>,
    pub edges: Vec<[String; 2]>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub meta: Option<Value>,
}

impl ComplexDocument {
    pub fn from_json(text: &str) -> Result<Self> {
        Ok(serde_json::from_str(text)?)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("complex documents always serialize")
    }

    pub fn into_complex(self) -> Result<FlagComplex> {
        let tags = match self.meta.as_ref().and_then(|m| m.get("tags")) {
            Some(t) => serde_json::from_value::<BTreeMap<String, BTreeSet<String>>>(t.clone())
                .map_err(|e| Error::Format(format!("meta.tags: {e}")))?,
            None => BTreeMap::new(),
        };
        let mut c = FlagComplex::from_adjacency(self.vertices, self.edges.iter().map(|[a, b]| (a, b)))?;
        for (id, ts) in tags {
            for t in ts {
                c.add_tag(&id, t)?;
            }
        }
        Ok(c)
    }
}

impl From<&FlagComplex> for ComplexDocument {
    fn from(c: &FlagComplex) -> Self {
        let edges = c.edges().into_iter().map(|(i, j)| [c.id(i).to_string(), c.id(j).to_string()]).collect();
        let meta = (!c.all_tags().is_empty()).then(|| serde_json::json!({ "tags": c.all_tags() }));
        ComplexDocument { vertices: c.ids().to_vec(), edges, meta }
    }
}
