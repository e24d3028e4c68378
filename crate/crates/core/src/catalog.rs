//! JSONL group catalogs: reading, writing, and invariant-level duplicate
//! detection.
//!
//! One record per line:
//!
//! ```text
//! {"name": str, "kind": "table"|"perm", "order": int, "table": [[int]]?, "degree": int?, "gens": [[int]]?,
//!  "invariants": {"order": int, "z": int, "class_sizes": [int], "elem_orders": [int], "fingerprint": {...}?}?}
//! ```

use std::collections::BTreeMap;
use std::fs;
use std::io::{self, Write};
use std::path::Path;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

use crate::graph::{fingerprint, noncommuting_graph, Fingerprint};
use crate::group::FiniteGroup;
use crate::structure::conjugacy_classes;

#[derive(Debug, Error)]
pub enum CatalogError {
    #[error("line {line}: {reason}")]
    ParseError { line: usize, reason: String },
    #[error("record {name:?}: {reason}")]
    ValidationError { name: String, reason: String },
    #[error(transparent)]
    Io(#[from] io::Error),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum RecordKind {
    Table,
    Perm,
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct Invariants {
    pub order: usize,
    pub z: usize,
    pub class_sizes: Vec<usize>,
    pub elem_orders: Vec<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub fingerprint: Option<Fingerprint>,
}

impl Invariants {
    pub fn compute(g: &FiniteGroup) -> Self {
        let classes = conjugacy_classes(g);
        Self {
            order: g.order(),
            z: classes.center_size,
            class_sizes: classes.sorted_sizes(),
            elem_orders: g.element_orders(),
            fingerprint: noncommuting_graph(g).ok().map(|graph| fingerprint(&graph)),
        }
    }
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct CatalogRecord {
    pub name: String,
    pub kind: RecordKind,
    pub order: usize,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub degree: Option<usize>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub gens: Option<Vec<Vec<usize>>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub invariants: Option<Invariants>,
}

impl CatalogRecord {
    /// A `table` record for `g`, optionally carrying its invariants.
    pub fn from_group(g: &FiniteGroup, with_invariants: bool) -> Self {
        Self {
            name: g.name().to_string(),
            kind: RecordKind::Table,
            order: g.order(),
            table: Some(g.to_rows()),
            degree: None,
            gens: None,
            invariants: with_invariants.then(|| Invariants::compute(g)),
        }
    }

    /// Constructs and validates the group, then checks cached invariants.
    pub fn build(&self) -> Result<FiniteGroup, CatalogError> {
        let invalid = |reason: String| CatalogError::ValidationError { name: self.name.clone(), reason };
        let group = match self.kind {
            RecordKind::Table => {
                let table = self.table.as_ref().ok_or_else(|| invalid("table record without \"table\"".into()))?;
                FiniteGroup::from_cayley_table(table, self.name.clone())
            }
            RecordKind::Perm => {
                let degree = self.degree.ok_or_else(|| invalid("perm record without \"degree\"".into()))?;
                let gens = self.gens.as_deref().unwrap_or_default();
                FiniteGroup::from_permutation_generators(degree, gens, self.name.clone())
            }
        }
        .map_err(|e| invalid(e.to_string()))?;
        if group.order() != self.order {
            return Err(invalid(format!("declared order {} but constructed {}", self.order, group.order())));
        }
        if let Some(cached) = &self.invariants {
            let fresh = Invariants::compute(&group);
            let mismatch = if cached.order != fresh.order {
                Some("order")
            } else if cached.z != fresh.z {
                Some("z")
            } else if cached.class_sizes != fresh.class_sizes {
                Some("class_sizes")
            } else if cached.elem_orders != fresh.elem_orders {
                Some("elem_orders")
            } else if cached.fingerprint.is_some() && cached.fingerprint != fresh.fingerprint {
                Some("fingerprint")
            } else {
                None
            };
            if let Some(field) = mismatch {
                return Err(invalid(format!("cached invariant {field} does not match recomputation")));
            }
        }
        Ok(group)
    }
}

/// Parses a catalog without building the groups. Blank lines are skipped.
pub fn parse_catalog(text: &str) -> Result<Vec<CatalogRecord>, CatalogError> {
    text.lines()
        .enumerate()
        .filter(|(_, l)| !l.trim().is_empty())
        .map(|(i, l)| serde_json::from_str(l).map_err(|e| CatalogError::ParseError { line: i + 1, reason: e.to_string() }))
        .collect()
}

/// Reads and validates every record; records are validated in parallel and
/// returned in file order.
pub fn read_catalog(path: impl AsRef<Path>) -> Result<Vec<FiniteGroup>, CatalogError> {
    let text = fs::read_to_string(path)?;
    let records = parse_catalog(&text)?;
    records.par_iter().map(CatalogRecord::build).collect()
}

pub fn write_catalog(groups: &[FiniteGroup], path: impl AsRef<Path>) -> Result<usize, CatalogError> {
    write_records(groups, path.as_ref(), false)
}

pub fn write_catalog_with_invariants(groups: &[FiniteGroup], path: impl AsRef<Path>) -> Result<usize, CatalogError> {
    write_records(groups, path.as_ref(), true)
}

/// The JSONL text for `groups`, sorted by name.
pub fn render_catalog(groups: &[FiniteGroup], with_invariants: bool) -> String {
    let mut records: Vec<CatalogRecord> = groups.par_iter().map(|g| CatalogRecord::from_group(g, with_invariants)).collect();
    records.sort_by(|a, b| a.name.cmp(&b.name));
    let mut out = String::new();
    for r in &records {
        out.push_str(&serde_json::to_string(r).expect("serializable"));
        out.push('\n');
    }
    out
}

fn write_records(groups: &[FiniteGroup], path: &Path, with_invariants: bool) -> Result<usize, CatalogError> {
    let text = render_catalog(groups, with_invariants);
    let mut tmp_name = path.file_name().map(|n| n.to_os_string()).unwrap_or_default();
    tmp_name.push(".tmp");
    let tmp = path.with_file_name(tmp_name);
    {
        let mut file = fs::File::create(&tmp)?;
        file.write_all(text.as_bytes())?;
        file.sync_all()?;
    }
    fs::rename(&tmp, path)?;
    Ok(groups.len())
}

#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct Dedupe {
    pub kept: Vec<String>,
    /// Name pairs `(a, b)` with `a < b` sharing every invariant.
    pub suspected_duplicates: Vec<(String, String)>,
}

/// Flags groups whose order, center order, class sizes, element orders, and
/// graph fingerprint all coincide. Nothing is removed.
pub fn dedupe(groups: &[FiniteGroup]) -> Dedupe {
    let keys: Vec<Invariants> = groups.par_iter().map(Invariants::compute).collect();
    let mut buckets: BTreeMap<String, Vec<&str>> = BTreeMap::new();
    for (g, key) in groups.iter().zip(&keys) {
        let key = serde_json::to_string(key).expect("serializable");
        buckets.entry(key).or_default().push(g.name());
    }
    let mut suspected = Vec::new();
    for names in buckets.values() {
        let mut names = names.clone();
        names.sort_unstable();
        for i in 0..names.len() {
            for j in i + 1..names.len() {
                suspected.push((names[i].to_string(), names[j].to_string()));
            }
        }
    }
    suspected.sort();
    Dedupe { kept: groups.iter().map(|g| g.name().to_string()).collect(), suspected_duplicates: suspected }
}
