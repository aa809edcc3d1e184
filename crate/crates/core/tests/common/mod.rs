#![allow(dead_code)]

use std::sync::{Arc, OnceLock};

use nmax::dsl::{build_group, shipped_corpus, LatticeCache};
use nmax::lattice::LatticeCaps;
use nmax::{FiniteGroup, SubgroupLattice, Subgroup};

pub struct Entry {
    pub name: String,
    pub group: Arc<FiniteGroup>,
    pub lattice: Arc<SubgroupLattice>,
}

pub fn cache() -> &'static LatticeCache {
    static CACHE: OnceLock<LatticeCache> = OnceLock::new();
    CACHE.get_or_init(|| LatticeCache::new(LatticeCaps::default()))
}

/// Every shipped corpus group, with its lattice.
pub fn corpus() -> &'static [Entry] {
    static CORPUS: OnceLock<Vec<Entry>> = OnceLock::new();
    CORPUS.get_or_init(|| {
        shipped_corpus()
            .into_iter()
            .map(|e| {
                let group = Arc::new(build_group(&e.spec, 5000).unwrap().with_name(&e.name));
                let lattice = cache().get(&group).unwrap();
                Entry {
                    name: e.name,
                    group,
                    lattice,
                }
            })
            .collect()
    })
}

/// Corpus groups of order at most `max`, for the quadratic checks.
pub fn up_to(max: usize) -> impl Iterator<Item = &'static Entry> {
    corpus().iter().filter(move |e| e.group.order() <= max)
}

pub fn entry(name: &str) -> &'static Entry {
    corpus().iter().find(|e| e.name == name).unwrap_or_else(|| panic!("{name} not in corpus"))
}

/// Exhaustive subgroup enumeration from all triples of elements; independent
/// of the lattice builder.
pub fn brute_force_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let n = g.order() as u32;
    let mut found = std::collections::BTreeSet::new();
    for a in 0..n {
        for b in a..n {
            found.insert(g.generated([a, b]));
        }
    }
    let pairs: Vec<Subgroup> = found.iter().cloned().collect();
    for h in &pairs {
        for c in 0..n {
            if !h.contains(c) {
                found.insert(g.extend(h, c));
            }
        }
    }
    found.into_iter().collect()
}
