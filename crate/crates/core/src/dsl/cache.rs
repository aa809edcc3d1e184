//! Lattice cache: in memory, optionally backed by one JSON file per group
//! keyed by the multiplication-table fingerprint.

use std::collections::HashMap;
use std::path::{Path, PathBuf};
use std::sync::{Arc, RwLock};

use serde::{Deserialize, Serialize};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::FiniteGroup;
use crate::lattice::{LatticeCaps, SubgroupLattice};

use super::report::write_atomic;

pub const CACHE_SCHEMA_VERSION: u32 = 1;

#[derive(Serialize, Deserialize)]
struct CachedLattice {
    schema_version: u32,
    fingerprint: String,
    order: usize,
    /// Member lists, in lattice order.
    subgroups: Vec<Vec<u32>>,
    /// Maximal subgroups of each subgroup, as lattice indices.
    maximal: Vec<Vec<usize>>,
}

fn cache_file(dir: &Path, g: &FiniteGroup) -> PathBuf {
    dir.join(format!("{:016x}.json", g.fingerprint()))
}

pub fn cache_lattice(l: &SubgroupLattice, dir: &Path) -> Result<()> {
    let g = l.group();
    std::fs::create_dir_all(dir).map_err(|e| Error::io(dir, e))?;
    let doc = CachedLattice {
        schema_version: CACHE_SCHEMA_VERSION,
        fingerprint: format!("{:016x}", g.fingerprint()),
        order: g.order(),
        subgroups: l.subgroups().iter().map(|s| s.elements().collect()).collect(),
        maximal: (0..l.len()).map(|i| l.lower_covers(i).to_vec()).collect(),
    };
    write_atomic(&cache_file(dir, g), &serde_json::to_string(&doc)?)
}

/// `Ok(None)` when no entry exists or the entry belongs to a different table.
pub fn load_cached_lattice(g: &Arc<FiniteGroup>, dir: &Path) -> Result<Option<SubgroupLattice>> {
    let path = cache_file(dir, g);
    let text = match std::fs::read_to_string(&path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(None),
        Err(e) => return Err(Error::io(&path, e)),
    };
    let doc: CachedLattice = serde_json::from_str(&text)?;
    if doc.schema_version != CACHE_SCHEMA_VERSION {
        return Err(Error::CacheVersionMismatch {
            found: doc.schema_version,
            expected: CACHE_SCHEMA_VERSION,
        });
    }
    if doc.fingerprint != format!("{:016x}", g.fingerprint()) || doc.order != g.order() || doc.maximal.len() != doc.subgroups.len() {
        return Ok(None);
    }
    let mut subgroups = Vec::with_capacity(doc.subgroups.len());
    for members in &doc.subgroups {
        if members.iter().any(|&x| x as usize >= g.order()) {
            return Ok(None);
        }
        let bits = BitSet::from_indices(g.order(), members.iter().map(|&x| x as usize));
        match g.subgroup(bits) {
            Some(s) => subgroups.push(s),
            None => return Ok(None),
        }
    }
    if doc.maximal.iter().flatten().any(|&i| i >= subgroups.len()) {
        return Ok(None);
    }
    Ok(Some(SubgroupLattice::assemble(g.clone(), subgroups, doc.maximal)))
}

/// Shared lattices for many groups. Reads take a shared lock; a missing
/// lattice is built outside the lock and inserted under the write lock.
#[derive(Default)]
pub struct LatticeCache {
    dir: Option<PathBuf>,
    caps: LatticeCaps,
    map: RwLock<HashMap<u64, Arc<SubgroupLattice>>>,
}

impl LatticeCache {
    pub fn new(caps: LatticeCaps) -> Self {
        LatticeCache {
            dir: None,
            caps,
            map: RwLock::new(HashMap::new()),
        }
    }

    pub fn with_dir(caps: LatticeCaps, dir: PathBuf) -> Self {
        LatticeCache {
            dir: Some(dir),
            ..LatticeCache::new(caps)
        }
    }

    pub fn caps(&self) -> LatticeCaps {
        self.caps
    }

    pub fn get(&self, g: &Arc<FiniteGroup>) -> Result<Arc<SubgroupLattice>> {
        if let Some(l) = self.map.read().unwrap().get(&g.fingerprint()) {
            return Ok(l.clone());
        }
        let loaded = match &self.dir {
            Some(dir) => load_cached_lattice(g, dir)?,
            None => None,
        };
        let lattice = match loaded {
            Some(l) => l,
            None => {
                let l = SubgroupLattice::build(g.clone(), self.caps)?;
                if let Some(dir) = &self.dir {
                    cache_lattice(&l, dir)?;
                }
                l
            }
        };
        let lattice = Arc::new(lattice);
        let mut map = self.map.write().unwrap();
        Ok(map.entry(g.fingerprint()).or_insert(lattice).clone())
    }
}
