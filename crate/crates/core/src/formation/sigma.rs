use serde::Serialize;

use crate::lattice::SubgroupLattice;
use crate::numbers::gcd;

use super::Formation;

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SigmaReport {
    pub group_in_f: bool,
    /// Lattice indices of `t` members of `F` with pairwise coprime indices.
    pub witness: Option<Vec<usize>>,
    /// A witness exists although `G` is not in `F`.
    pub violation: bool,
}

/// Searches for `t` subgroups in `F` whose indices in `G` are pairwise
/// coprime. Distinct pairwise coprime indices differ, so it suffices to find
/// one member of `F` per index value and then a coprime `t`-clique of values.
pub fn sigma_closure_check(l: &SubgroupLattice, f: &Formation, t: usize) -> SigmaReport {
    let g = l.group();
    let group_in_f = f.contains(g);
    let n = g.order();
    let mut by_index: Vec<(usize, usize)> = Vec::new();
    let mut indices: Vec<usize> = (0..l.len()).map(|i| n / l.get(i).order()).collect();
    indices.sort_unstable();
    indices.dedup();
    for d in indices {
        if let Some(i) = (0..l.len()).find(|&i| n / l.get(i).order() == d && f.contains_subgroup(g, l.get(i))) {
            by_index.push((d, i));
        }
    }
    let mut chosen = Vec::new();
    let witness = clique(&by_index, t, 0, &mut chosen).then(|| chosen.iter().map(|&k| by_index[k].1).collect());
    let violation = !group_in_f && witness.is_some();
    SigmaReport {
        group_in_f,
        witness,
        violation,
    }
}

fn clique(cands: &[(usize, usize)], t: usize, from: usize, chosen: &mut Vec<usize>) -> bool {
    if chosen.len() == t {
        return true;
    }
    for k in from..cands.len() {
        let d = cands[k].0 as u64;
        if chosen.iter().all(|&c| gcd(cands[c].0 as u64, d) == 1) {
            chosen.push(k);
            if clique(cands, t, k + 1, chosen) {
                return true;
            }
            chosen.pop();
        }
    }
    false
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::lattice::LatticeCaps;
    use crate::perm::Permutation;
    use std::sync::Arc;

    fn lattice(degree: usize, gens: &[&[&[usize]]]) -> SubgroupLattice {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|c| {
                let cs: Vec<Vec<usize>> = c.iter().map(|cy| cy.iter().map(|p| p - 1).collect()).collect();
                Permutation::from_cycles(degree, &cs).unwrap()
            })
            .collect();
        let g = Arc::new(FiniteGroup::from_generators(&gens, "g", 5000).unwrap());
        SubgroupLattice::build(g, LatticeCaps::default()).unwrap()
    }

    #[test]
    fn s3_has_no_nilpotent_triple() {
        let l = lattice(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        let r = sigma_closure_check(&l, &Formation::nilpotent(), 3);
        assert!(!r.group_in_f && r.witness.is_none() && !r.violation);
        // two coprime indices do exist: C3 (index 2) and C2 (index 3)
        assert!(sigma_closure_check(&l, &Formation::nilpotent(), 2).violation);
    }

    #[test]
    fn a5_soluble_triples() {
        let l = lattice(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        let r = sigma_closure_check(&l, &Formation::soluble(), 3);
        // A4, D10 and S3 have indices 5, 6, 10: no three are pairwise coprime
        assert!(!r.violation);
        assert!(sigma_closure_check(&l, &Formation::soluble(), 2).violation);
    }
}
