use std::path::Path;

use serde::Deserialize;

use crate::error::{Error, Result};

use super::group::{parse_group_spec, GroupSpec};

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct CorpusEntry {
    pub name: String,
    pub spec: GroupSpec,
    pub tags: Vec<String>,
}

#[derive(Deserialize)]
struct RawEntry {
    name: Option<String>,
    spec: Option<String>,
    #[serde(default)]
    tags: Vec<String>,
}

/// A corpus is a JSON array of `{name, spec, tags}` objects.
pub fn parse_corpus(text: &str) -> Result<Vec<CorpusEntry>> {
    let raw: Vec<serde_json::Value> = serde_json::from_str(text).map_err(|e| Error::CorpusParse {
        entry: "<document>".into(),
        msg: e.to_string(),
    })?;
    raw.into_iter()
        .enumerate()
        .map(|(i, v)| {
            let label = |name: &Option<String>| match name {
                Some(n) => format!("#{i} ({n})"),
                None => format!("#{i}"),
            };
            let r: RawEntry = serde_json::from_value(v).map_err(|e| Error::CorpusParse {
                entry: format!("#{i}"),
                msg: e.to_string(),
            })?;
            let spec_text = r.spec.as_deref().ok_or_else(|| Error::CorpusParse {
                entry: label(&r.name),
                msg: "missing \"spec\"".into(),
            })?;
            let spec = parse_group_spec(spec_text).map_err(|e| Error::CorpusParse {
                entry: label(&r.name),
                msg: e.to_string(),
            })?;
            Ok(CorpusEntry {
                name: r.name.unwrap_or_else(|| spec_text.to_string()),
                spec,
                tags: r.tags,
            })
        })
        .collect()
}

/// The curated corpus shipped with the crate.
pub const SHIPPED_CORPUS: &str = include_str!("../../data/corpus.json");

pub fn shipped_corpus() -> Vec<CorpusEntry> {
    parse_corpus(SHIPPED_CORPUS).expect("shipped corpus parses")
}

pub fn load_corpus(path: &Path) -> Result<Vec<CorpusEntry>> {
    let text = std::fs::read_to_string(path).map_err(|e| Error::io(path, e))?;
    parse_corpus(&text)
}
