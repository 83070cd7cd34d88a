//! JSON result cache. Without a directory every lookup misses and stores are no-ops.

use std::fs;
use std::path::{Path, PathBuf};

use serde::{de::DeserializeOwned, Deserialize, Serialize};

use crate::error::Result;
use crate::group::{FiniteGroup, GroupJson};

#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct CohomologyEntry {
    pub group_id: String,
    pub m: u64,
    pub invariant_factors: Vec<u64>,
    pub class_count: u64,
    /// Unknown until the extensions have been classified.
    pub iso_class_count: Option<usize>,
}

#[derive(Debug, Clone, Default)]
pub struct Cache {
    dir: Option<PathBuf>,
}

fn sanitize(id: &str) -> String {
    id.chars()
        .map(|c| if c.is_ascii_alphanumeric() || c == '-' || c == '_' { c } else { '_' })
        .collect()
}

impl Cache {
    pub fn new(dir: Option<&Path>) -> Result<Self> {
        if let Some(d) = dir {
            fs::create_dir_all(d)?;
        }
        Ok(Self {
            dir: dir.map(Path::to_path_buf),
        })
    }

    pub fn disabled() -> Self {
        Self::default()
    }

    fn path(&self, kind: &str, key: &str) -> Option<PathBuf> {
        self.dir.as_ref().map(|d| d.join(format!("{kind}-{}.json", sanitize(key))))
    }

    fn load<T: DeserializeOwned>(&self, kind: &str, key: &str) -> Option<T> {
        let text = fs::read_to_string(self.path(kind, key)?).ok()?;
        // a corrupt entry is treated as a miss and overwritten later
        serde_json::from_str(&text).ok()
    }

    fn store<T: Serialize>(&self, kind: &str, key: &str, value: &T) -> Result<()> {
        if let Some(p) = self.path(kind, key) {
            fs::write(p, serde_json::to_string_pretty(value)?)?;
        }
        Ok(())
    }

    pub fn cohomology(&self, group_id: &str, m: u64) -> Option<CohomologyEntry> {
        self.load::<CohomologyEntry>("h2", &format!("{group_id}-m{m}"))
            .filter(|e| e.group_id == group_id && e.m == m)
    }

    pub fn put_cohomology(&self, entry: &CohomologyEntry) -> Result<()> {
        self.store("h2", &format!("{}-m{}", entry.group_id, entry.m), entry)
    }

    /// Group tables keyed by constructor name and parameters.
    pub fn group(&self, key: &str) -> Option<FiniteGroup> {
        FiniteGroup::from_json(self.load::<GroupJson>("group", key)?).ok()
    }

    pub fn put_group(&self, key: &str, g: &FiniteGroup) -> Result<()> {
        self.store("group", key, &g.to_json())
    }

    /// Looks up a group table, building and storing it on a miss.
    pub fn group_or_build(&self, key: &str, build: impl FnOnce() -> Result<FiniteGroup>) -> Result<FiniteGroup> {
        if let Some(g) = self.group(key) {
            return Ok(g);
        }
        let g = build()?;
        self.put_group(key, &g)?;
        Ok(g)
    }
}
