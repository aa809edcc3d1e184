use std::cell::RefCell;
use std::collections::HashMap;

use crate::error::{Error, Result};
use crate::lattice::SubgroupLattice;

use super::Formation;

/// Memoized `F`-subnormality over one lattice.
///
/// `H` is `F`-subnormal in `A` iff `H = A` or some `K` covering `H` inside `A`
/// has `K/core_K(H)` in `F` and is itself `F`-subnormal in `A`. The edge test
/// uses the permutation action of `K` on the cosets of `H`, whose image is
/// exactly `K/core_K(H)`.
pub struct FSubnormality<'a> {
    lattice: &'a SubgroupLattice,
    formation: Formation,
    edges: RefCell<HashMap<(usize, usize), bool>>,
    memo: RefCell<HashMap<(usize, usize), bool>>,
}

impl<'a> FSubnormality<'a> {
    pub fn new(lattice: &'a SubgroupLattice, formation: &Formation) -> Self {
        FSubnormality {
            lattice,
            formation: formation.clone(),
            edges: RefCell::new(HashMap::new()),
            memo: RefCell::new(HashMap::new()),
        }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lattice
    }

    pub fn formation(&self) -> &Formation {
        &self.formation
    }

    /// `K/core_K(H) in F` for `H` maximal in `K`.
    pub fn edge(&self, h: usize, k: usize) -> bool {
        if let Some(&v) = self.edges.borrow().get(&(h, k)) {
            return v;
        }
        let l = self.lattice;
        let action = l.group().coset_action(l.get(k), l.get(h));
        let v = self.formation.contains(&action);
        self.edges.borrow_mut().insert((h, k), v);
        v
    }

    pub fn is_f_subnormal_in(&self, h: usize, ambient: usize) -> bool {
        if h == ambient {
            return true;
        }
        if let Some(&v) = self.memo.borrow().get(&(h, ambient)) {
            return v;
        }
        let l = self.lattice;
        let top = l.get(ambient);
        let v = l
            .upper_covers(h)
            .iter()
            .any(|&k| l.get(k).is_subgroup_of(top) && self.edge(h, k) && self.is_f_subnormal_in(k, ambient));
        self.memo.borrow_mut().insert((h, ambient), v);
        v
    }

    pub fn is_f_subnormal(&self, h: usize) -> bool {
        self.is_f_subnormal_in(h, self.lattice.top())
    }

    /// One witnessing chain from `h` up to `ambient`, if any.
    pub fn chain(&self, h: usize, ambient: usize) -> Option<Vec<usize>> {
        if !self.is_f_subnormal_in(h, ambient) {
            return None;
        }
        let l = self.lattice;
        let mut chain = vec![h];
        let mut cur = h;
        while cur != ambient {
            cur = *l
                .upper_covers(cur)
                .iter()
                .find(|&&k| l.get(k).is_subgroup_of(l.get(ambient)) && self.edge(cur, k) && self.is_f_subnormal_in(k, ambient))
                .expect("memo says a chain exists");
            chain.push(cur);
        }
        Some(chain)
    }

    /// The `n`-maximal subgroups of subgroup `top` that are not `F`-subnormal in it.
    pub fn failing_n_maximal(&self, top: usize, n: usize) -> Vec<usize> {
        self.lattice
            .n_maximal_indices(top, n)
            .into_iter()
            .filter(|&h| !self.is_f_subnormal_in(h, top))
            .collect()
    }

    pub fn all_n_maximal_f_subnormal(&self, n: usize) -> (bool, Vec<usize>) {
        let bad = self.failing_n_maximal(self.lattice.top(), n);
        (bad.is_empty(), bad)
    }
}

/// `G/core_G(M) in F` for a maximal subgroup `M` (given by lattice index).
pub fn is_f_normal_maximal(l: &SubgroupLattice, m: usize, f: &Formation) -> Result<bool> {
    let g = l.group();
    if !l.is_maximal_in(m, l.top()) {
        return Err(Error::NotMaximal {
            group: g.name().to_string(),
            order: l.get(m).order(),
        });
    }
    Ok(f.contains(&g.coset_action(&g.whole(), l.get(m))))
}

/// Not in `F`, every proper subgroup in `F`.
pub fn is_f_critical_literal(l: &SubgroupLattice, f: &Formation) -> bool {
    let g = l.group();
    !f.contains(g) && (0..l.top()).all(|i| f.contains_subgroup(g, l.get(i)))
}

/// As [`is_f_critical_literal`], checking only maximal subgroups when `F` is
/// known to be hereditary.
pub fn is_f_critical(l: &SubgroupLattice, f: &Formation) -> bool {
    if !f.is_hereditary() {
        return is_f_critical_literal(l, f);
    }
    let g = l.group();
    !f.contains(g) && l.lower_covers(l.top()).iter().all(|&m| f.contains_subgroup(g, l.get(m)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::group::FiniteGroup;
    use crate::lattice::{sylow, LatticeCaps};
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

    fn sl23() -> SubgroupLattice {
        lattice(8, &[&[&[1, 4, 7], &[2, 8, 5]], &[&[1, 6, 2, 3], &[4, 7, 8, 5]]])
    }

    #[test]
    fn d8_all_nilpotent_subnormal() {
        let l = lattice(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        let n = Formation::nilpotent();
        let o = FSubnormality::new(&l, &n);
        assert!((0..l.len()).all(|i| o.is_f_subnormal(i)));
    }

    #[test]
    fn sylow3_of_sl23_not_u_subnormal() {
        let l = sl23();
        let u = Formation::supersoluble();
        let o = FSubnormality::new(&l, &u);
        let p3 = sylow(l.group(), 3);
        assert!(!o.is_f_subnormal(l.idx(&p3)));
        assert!(is_f_critical(&l, &u) && is_f_critical_literal(&l, &u));
        // Q8 is normal of index 3
        let q8 = sylow(l.group(), 2);
        assert!(o.is_f_subnormal(l.idx(&q8)));
    }

    #[test]
    fn frob21_trivial_subgroup_nilpotent_subnormal() {
        let l = lattice(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]]);
        let n = Formation::nilpotent();
        let o = FSubnormality::new(&l, &n);
        let chain = o.chain(0, l.top()).unwrap();
        let orders: Vec<usize> = chain.iter().map(|&i| l.get(i).order()).collect();
        assert_eq!(orders, vec![1, 7, 21]);
        assert!(o.all_n_maximal_f_subnormal(2).0);
    }

    #[test]
    fn s4_maximals() {
        let l = lattice(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]]);
        let u = Formation::supersoluble();
        let maxes = l.lower_covers(l.top()).to_vec();
        let normal: Vec<(usize, bool)> = maxes
            .iter()
            .map(|&m| (l.get(m).order(), is_f_normal_maximal(&l, m, &u).unwrap()))
            .collect();
        // A4 has quotient C2; a point stabilizer has trivial core
        assert!(normal.contains(&(12, true)));
        assert!(normal.contains(&(6, false)));
        assert!(matches!(is_f_normal_maximal(&l, 0, &u), Err(Error::NotMaximal { .. })));
        let o = FSubnormality::new(&l, &u);
        let (ok, bad) = o.all_n_maximal_f_subnormal(1);
        assert!(!ok);
        assert!(bad.iter().any(|&b| l.get(b).order() == 6));
        let a4 = lattice(4, &[&[&[1, 2, 3]], &[&[1, 2], &[3, 4]]]);
        assert!(is_f_critical(&a4, &Formation::nilpotent()));
        assert!(!is_f_critical(&l, &u));
    }
}
