//! The full subgroup lattice and the normal structure derived from it.

use std::collections::{HashMap, VecDeque};
use std::sync::Arc;

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::numbers::{p_part, pi_part, prime_power_base};

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct LatticeCaps {
    pub max_order: usize,
    pub max_subgroups: usize,
}

impl Default for LatticeCaps {
    fn default() -> Self {
        LatticeCaps {
            max_order: 1000,
            max_subgroups: 100_000,
        }
    }
}

/// Every subgroup of a group, in `(order, members)` order, with the cover
/// relation in both directions. Index 0 is the trivial subgroup and the last
/// index is the whole group.
#[derive(Debug)]
pub struct SubgroupLattice {
    group: Arc<FiniteGroup>,
    subgroups: Vec<Subgroup>,
    index: HashMap<BitSet, usize>,
    upper: Vec<Vec<usize>>,
    lower: Vec<Vec<usize>>,
}

impl SubgroupLattice {
    /// Enumerates by extension: every subgroup `K > H` contains some `<H, g>`,
    /// and `<H, g>` depends only on the double coset `HgH`. The upper covers of
    /// `H` are the inclusion-minimal members of `{<H, g>}`.
    pub fn build(group: Arc<FiniteGroup>, caps: LatticeCaps) -> Result<Self> {
        let n = group.order();
        if n > caps.max_order {
            return Err(Error::LatticeExceedsCap {
                reason: format!("group order {n} exceeds {}", caps.max_order),
            });
        }
        let mut found: Vec<Subgroup> = vec![group.trivial_subgroup()];
        let mut index: HashMap<BitSet, usize> = HashMap::new();
        index.insert(found[0].members().clone(), 0);
        let mut covers: Vec<Vec<usize>> = Vec::new();
        let mut queue = VecDeque::from([0usize]);
        while let Some(i) = queue.pop_front() {
            let h = found[i].clone();
            let mut ext: Vec<usize> = Vec::new();
            let mut seen = h.members().clone();
            let h_elems: Vec<Elem> = h.elements().collect();
            for g in group.elements() {
                if seen.contains(g as usize) {
                    continue;
                }
                for &a in &h_elems {
                    let ag = group.mul(a, g);
                    if seen.contains(ag as usize) {
                        continue;
                    }
                    for &b in &h_elems {
                        seen.insert(group.mul(ag, b) as usize);
                    }
                }
                let k = group.extend(&h, g);
                let j = match index.get(k.members()) {
                    Some(&j) => j,
                    None => {
                        if found.len() >= caps.max_subgroups {
                            return Err(Error::LatticeExceedsCap {
                                reason: format!("more than {} subgroups", caps.max_subgroups),
                            });
                        }
                        let j = found.len();
                        index.insert(k.members().clone(), j);
                        found.push(k);
                        queue.push_back(j);
                        j
                    }
                };
                if !ext.contains(&j) {
                    ext.push(j);
                }
            }
            let minimal: Vec<usize> = ext
                .iter()
                .copied()
                .filter(|&a| {
                    !ext.iter().any(|&b| {
                        b != a && found[b].order() < found[a].order() && found[b].is_subgroup_of(&found[a])
                    })
                })
                .collect();
            if covers.len() <= i {
                covers.resize(i + 1, Vec::new());
            }
            covers[i] = minimal;
        }
        covers.resize(found.len(), Vec::new());
        let mut lower = vec![Vec::new(); found.len()];
        for (i, ups) in covers.iter().enumerate() {
            for &j in ups {
                lower[j].push(i);
            }
        }
        Ok(SubgroupLattice::assemble(group, found, lower))
    }

    /// Reorders into the deterministic subgroup order and derives upper covers.
    pub(crate) fn assemble(group: Arc<FiniteGroup>, subgroups: Vec<Subgroup>, lower: Vec<Vec<usize>>) -> Self {
        let mut perm: Vec<usize> = (0..subgroups.len()).collect();
        perm.sort_by(|&a, &b| subgroups[a].cmp(&subgroups[b]));
        let mut rank = vec![0; subgroups.len()];
        for (new, &old) in perm.iter().enumerate() {
            rank[old] = new;
        }
        let sorted: Vec<Subgroup> = perm.iter().map(|&old| subgroups[old].clone()).collect();
        let mut new_lower: Vec<Vec<usize>> = perm
            .iter()
            .map(|&old| {
                let mut v: Vec<usize> = lower[old].iter().map(|&x| rank[x]).collect();
                v.sort_unstable();
                v
            })
            .collect();
        let mut upper = vec![Vec::new(); sorted.len()];
        for (j, lows) in new_lower.iter_mut().enumerate() {
            for &i in lows.iter() {
                upper[i].push(j);
            }
        }
        for u in upper.iter_mut() {
            u.sort_unstable();
        }
        let index = sorted
            .iter()
            .enumerate()
            .map(|(i, s)| (s.members().clone(), i))
            .collect();
        SubgroupLattice {
            group,
            subgroups: sorted,
            index,
            upper,
            lower: new_lower,
        }
    }

    pub fn group(&self) -> &Arc<FiniteGroup> {
        &self.group
    }

    pub fn len(&self) -> usize {
        self.subgroups.len()
    }

    pub fn is_empty(&self) -> bool {
        self.subgroups.is_empty()
    }

    pub fn subgroups(&self) -> &[Subgroup] {
        &self.subgroups
    }

    pub fn get(&self, i: usize) -> &Subgroup {
        &self.subgroups[i]
    }

    pub fn top(&self) -> usize {
        self.subgroups.len() - 1
    }

    pub fn bottom(&self) -> usize {
        0
    }

    pub fn index_of(&self, h: &Subgroup) -> Option<usize> {
        if h.parent_fingerprint() != self.group.fingerprint() {
            return None;
        }
        self.index.get(h.members()).copied()
    }

    /// Index of `h`, which must be a subgroup of the lattice's group.
    pub fn idx(&self, h: &Subgroup) -> usize {
        self.index_of(h).expect("subgroup belongs to this lattice")
    }

    /// Subgroups in which `i` is maximal.
    pub fn upper_covers(&self, i: usize) -> &[usize] {
        &self.upper[i]
    }

    /// Maximal subgroups of subgroup `i`.
    pub fn lower_covers(&self, i: usize) -> &[usize] {
        &self.lower[i]
    }

    pub fn maximal_subgroups(&self, h: &Subgroup) -> Vec<Subgroup> {
        self.lower[self.idx(h)].iter().map(|&i| self.subgroups[i].clone()).collect()
    }

    pub fn is_maximal_in(&self, h: usize, k: usize) -> bool {
        self.lower[k].binary_search(&h).is_ok()
    }

    /// Indices of subgroups reachable from `top` by exactly `n` maximal steps.
    pub fn n_maximal_indices(&self, top: usize, n: usize) -> Vec<usize> {
        let mut level = vec![top];
        for _ in 0..n {
            let mut next: Vec<usize> = level.iter().flat_map(|&i| self.lower[i].iter().copied()).collect();
            next.sort_unstable();
            next.dedup();
            level = next;
        }
        level
    }

    pub fn n_maximal_subgroups(&self, n: usize) -> Vec<Subgroup> {
        self.n_maximal_indices(self.top(), n)
            .into_iter()
            .map(|i| self.subgroups[i].clone())
            .collect()
    }

    /// Every chain of maximal steps from `h` up to `top`, as index lists
    /// starting at `h`. Yields nothing if `h` is not below `top`.
    pub fn maximal_chains(&self, h: usize, top: usize) -> MaximalChains<'_> {
        let below = self.subgroups[h].is_subgroup_of(&self.subgroups[top]);
        MaximalChains {
            lattice: self,
            top,
            stack: if below { vec![(h, 0)] } else { Vec::new() },
        }
    }

    /// Intersection of the maximal subgroups of subgroup `i` (itself if it has none).
    pub fn frattini_of(&self, i: usize) -> Subgroup {
        let mut members = self.subgroups[i].members().clone();
        for &m in &self.lower[i] {
            members.intersect_with(self.subgroups[m].members());
        }
        self.subgroups[self.index[&members]].clone()
    }

    pub fn frattini(&self) -> Subgroup {
        self.frattini_of(self.top())
    }

    /// First subgroup (in lattice order) of order the `pi`-part of `|G|`.
    pub fn hall(&self, pi: &[u64]) -> Option<Subgroup> {
        let target = pi_part(self.group.order() as u64, pi) as usize;
        self.subgroups.iter().find(|s| s.order() == target).cloned()
    }

    pub fn sylow_subgroups(&self, p: u64) -> Vec<usize> {
        let target = p_part(self.group.order() as u64, p) as usize;
        (0..self.len()).filter(|&i| self.subgroups[i].order() == target).collect()
    }

    /// Sampled check that the lattice is closed under intersection.
    pub fn check_intersection_closed(&self, stride: usize) -> bool {
        let n = self.len();
        (0..n).step_by(stride.max(1)).all(|a| {
            (0..n)
                .step_by(stride.max(1))
                .all(|b| self.index.contains_key(&self.subgroups[a].members().intersection(self.subgroups[b].members())))
        })
    }
}

pub struct MaximalChains<'a> {
    lattice: &'a SubgroupLattice,
    top: usize,
    stack: Vec<(usize, usize)>,
}

impl Iterator for MaximalChains<'_> {
    type Item = Vec<usize>;

    fn next(&mut self) -> Option<Vec<usize>> {
        let l = self.lattice;
        let top = &l.subgroups[self.top];
        loop {
            let &(node, _) = self.stack.last()?;
            if node == self.top {
                let chain = self.stack.iter().map(|&(x, _)| x).collect();
                self.stack.pop();
                return Some(chain);
            }
            let slot = self.stack.len() - 1;
            let ups = &l.upper[node];
            let mut k = self.stack[slot].1;
            while k < ups.len() && !l.subgroups[ups[k]].is_subgroup_of(top) {
                k += 1;
            }
            if k < ups.len() {
                self.stack[slot].1 = k + 1;
                self.stack.push((ups[k], 0));
            } else {
                self.stack.pop();
            }
        }
    }
}

// ---- normal structure (needs no lattice) ----------------------------------

/// All normal subgroups in deterministic order. Each is a product of normal
/// closures of class representatives, so joins starting from 1 reach them all.
pub fn normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    let closures: Vec<Subgroup> = g.class_representatives().skip(1).map(|x| g.element_normal_closure(x)).collect();
    let mut found = vec![g.trivial_subgroup()];
    let mut seen: HashMap<BitSet, ()> = HashMap::new();
    seen.insert(found[0].members().clone(), ());
    let mut i = 0;
    while i < found.len() {
        let n = found[i].clone();
        for c in &closures {
            if c.is_subgroup_of(&n) {
                continue;
            }
            let m = g.join(&n, c);
            if seen.insert(m.members().clone(), ()).is_none() {
                found.push(m);
            }
        }
        i += 1;
    }
    found.sort();
    found
}

/// Normal subgroups `L > k` of `G` with `L/k` minimal normal in `G/k`, in
/// deterministic order. `k` must be normal.
pub fn minimal_normal_over(g: &FiniteGroup, k: &Subgroup) -> Vec<Subgroup> {
    let mut cands: Vec<Subgroup> = Vec::new();
    for x in g.class_representatives() {
        if k.contains(x) {
            continue;
        }
        let m = g.join(k, &g.element_normal_closure(x));
        if !cands.contains(&m) {
            cands.push(m);
        }
    }
    let mut out: Vec<Subgroup> = cands
        .iter()
        .filter(|a| !cands.iter().any(|b| b.order() < a.order() && b.is_subgroup_of(a)))
        .cloned()
        .collect();
    out.sort();
    out
}

pub fn minimal_normal_subgroups(g: &FiniteGroup) -> Vec<Subgroup> {
    minimal_normal_over(g, &g.trivial_subgroup())
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct ChiefFactor {
    pub lower: Subgroup,
    pub upper: Subgroup,
    pub order: usize,
    /// The prime when the factor has prime-power order.
    pub prime: Option<u64>,
}

#[derive(Clone, Debug)]
pub struct ChiefSeries {
    pub terms: Vec<Subgroup>,
    pub factors: Vec<ChiefFactor>,
}

impl ChiefSeries {
    pub fn factor_orders(&self) -> Vec<usize> {
        self.factors.iter().map(|f| f.order).collect()
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Default)]
pub enum TieBreak {
    /// Ascend through the first candidate in subgroup order.
    #[default]
    First,
    /// Ascend through the last candidate; used to cross-check invariance.
    Last,
}

pub fn chief_series(g: &FiniteGroup) -> ChiefSeries {
    chief_series_with(g, TieBreak::First)
}

pub fn chief_series_with(g: &FiniteGroup, tie: TieBreak) -> ChiefSeries {
    let mut terms = vec![g.trivial_subgroup()];
    let mut factors = Vec::new();
    while terms.last().unwrap().order() < g.order() {
        let k = terms.last().unwrap().clone();
        let cands = minimal_normal_over(g, &k);
        let next = match tie {
            TieBreak::First => cands.first(),
            TieBreak::Last => cands.last(),
        }
        .expect("a proper normal subgroup has a minimal normal cover")
        .clone();
        let order = next.order() / k.order();
        factors.push(ChiefFactor {
            lower: k,
            upper: next.clone(),
            order,
            prime: prime_power_base(order as u64),
        });
        terms.push(next);
    }
    ChiefSeries { terms, factors }
}

/// Largest normal subgroup whose order involves only primes in `pi`.
pub fn o_pi(g: &FiniteGroup, pi: &[u64]) -> Subgroup {
    let is_pi = |n: usize| pi_part(n as u64, pi) == n as u64;
    let mut out = g.trivial_subgroup();
    for x in g.class_representatives() {
        if out.contains(x) || !is_pi(g.element_order(x) as usize) {
            continue;
        }
        let c = g.element_normal_closure(x);
        if is_pi(c.order()) {
            out = g.join(&out, &c);
        }
    }
    out
}

#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub enum CoreMode {
    P,
    PPrime,
    PPrimeP,
}

pub fn o_core(g: &FiniteGroup, mode: CoreMode, p: u64) -> Subgroup {
    let others: Vec<u64> = g.primes().into_iter().filter(|&q| q != p).collect();
    match mode {
        CoreMode::P => o_pi(g, &[p]),
        CoreMode::PPrime => o_pi(g, &others),
        CoreMode::PPrimeP => {
            let k = o_pi(g, &others);
            let q = g.quotient(&k).expect("cores are normal");
            let top = o_pi(&q.group, &[p]);
            q.preimage(g, &top)
        }
    }
}

/// Product of the `O_p(G)`: the largest normal nilpotent subgroup.
pub fn fitting(g: &FiniteGroup) -> Subgroup {
    g.primes()
        .into_iter()
        .fold(g.trivial_subgroup(), |acc, p| g.join(&acc, &o_pi(g, &[p])))
}

/// A Sylow `p`-subgroup, grown greedily: while `P` is not Sylow, `N_G(P)/P`
/// has order divisible by `p`, so some `p`-element normalizes `P` without
/// lying in it. Elements are tried in index order, so the result is deterministic.
pub fn sylow(g: &FiniteGroup, p: u64) -> Subgroup {
    let target = p_part(g.order() as u64, p) as usize;
    let mut s = g.trivial_subgroup();
    'grow: while s.order() < target {
        let norm = g.normalizer(&s);
        for x in norm.elements() {
            if !s.contains(x) && p_part(g.element_order(x) as u64, p) == g.element_order(x) as u64 {
                s = g.extend(&s, x);
                continue 'grow;
            }
        }
        unreachable!("Sylow growth stalled");
    }
    s
}

/// Ascending Fitting series `1 < F_1 < F_2 < ...`; stops early if it stalls below `G`.
pub fn fitting_series(g: &FiniteGroup) -> Vec<Subgroup> {
    let mut terms = vec![g.trivial_subgroup()];
    loop {
        let cur = terms.last().unwrap();
        if cur.order() == g.order() {
            return terms;
        }
        let q = g.quotient(cur).expect("Fitting terms are normal");
        let f = fitting(&q.group);
        if f.is_trivial() {
            return terms;
        }
        let next = q.preimage(g, &f);
        terms.push(next);
    }
}


#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn perm(degree: usize, cycles: &[&[usize]]) -> Permutation {
        let cs: Vec<Vec<usize>> = cycles.iter().map(|c| c.iter().map(|p| p - 1).collect()).collect();
        Permutation::from_cycles(degree, &cs).unwrap()
    }

    fn group(degree: usize, gens: &[&[&[usize]]]) -> Arc<FiniteGroup> {
        let gens: Vec<Permutation> = gens.iter().map(|c| perm(degree, c)).collect();
        Arc::new(FiniteGroup::from_generators(&gens, "g", 5000).unwrap())
    }

    fn s4() -> Arc<FiniteGroup> {
        group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
    }

    /// Oracle: every subset closed under multiplication, found by closing all
    /// subsets of generators up to size 3 (enough for the groups used here).
    fn brute_force_count(g: &FiniteGroup) -> usize {
        let mut set = std::collections::HashSet::new();
        let n = g.order() as Elem;
        for a in 0..n {
            for b in a..n {
                for c in b..n {
                    set.insert(g.generated([a, b, c]).members().clone());
                }
            }
        }
        set.len()
    }

    #[test]
    fn subgroup_counts() {
        let s3 = group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        let l = SubgroupLattice::build(s3.clone(), LatticeCaps::default()).unwrap();
        assert_eq!(l.len(), 6);
        assert_eq!(brute_force_count(&s3), 6);
        let s4 = s4();
        let l = SubgroupLattice::build(s4.clone(), LatticeCaps::default()).unwrap();
        assert_eq!(l.len(), 30);
        assert_eq!(brute_force_count(&s4), 30);
        let c7 = group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]]]);
        assert_eq!(SubgroupLattice::build(c7, LatticeCaps::default()).unwrap().len(), 2);
        assert!(l.check_intersection_closed(1));
    }

    #[test]
    fn caps() {
        let caps = LatticeCaps {
            max_order: 10,
            max_subgroups: 100,
        };
        assert!(matches!(SubgroupLattice::build(s4(), caps), Err(Error::LatticeExceedsCap { .. })));
        let caps = LatticeCaps {
            max_order: 100,
            max_subgroups: 20,
        };
        assert!(SubgroupLattice::build(s4(), caps).is_err());
    }

    #[test]
    fn covers_have_no_intermediate() {
        let l = SubgroupLattice::build(s4(), LatticeCaps::default()).unwrap();
        for k in 0..l.len() {
            for &h in l.lower_covers(k) {
                let (hs, ks) = (l.get(h), l.get(k));
                assert!(hs.is_subgroup_of(ks) && hs.order() < ks.order());
                assert!(!l
                    .subgroups()
                    .iter()
                    .any(|m| m.order() > hs.order() && m.order() < ks.order() && hs.is_subgroup_of(m) && m.is_subgroup_of(ks)));
            }
        }
        let mut orders: Vec<usize> = l.maximal_subgroups(l.get(l.top())).iter().map(|m| m.order()).collect();
        orders.sort_unstable();
        assert_eq!(orders, vec![6, 6, 6, 6, 8, 8, 8, 12]);
        assert!(l.lower_covers(0).is_empty());
        assert!(l.frattini().is_trivial());
    }

    #[test]
    fn n_maximal_and_chains() {
        let f21 = group(7, &[&[&[1, 2, 3, 4, 5, 6, 7]], &[&[2, 3, 5], &[4, 7, 6]]]);
        let l = SubgroupLattice::build(f21, LatticeCaps::default()).unwrap();
        assert_eq!(l.n_maximal_indices(l.top(), 1).len(), 8);
        assert_eq!(l.n_maximal_indices(l.top(), 2), vec![0]);
        assert_eq!(l.n_maximal_indices(l.top(), 0), vec![l.top()]);
        let c6 = group(5, &[&[&[1, 2, 3], &[4, 5]]]);
        let l = SubgroupLattice::build(c6, LatticeCaps::default()).unwrap();
        assert_eq!(l.maximal_chains(0, l.top()).count(), 2);
        assert_eq!(l.maximal_chains(l.top(), l.top()).collect::<Vec<_>>(), vec![vec![l.top()]]);
        let s4 = s4();
        let l = SubgroupLattice::build(s4.clone(), LatticeCaps::default()).unwrap();
        let v4 = fitting(&s4);
        let chains: Vec<Vec<usize>> = l.maximal_chains(l.idx(&v4), l.top()).collect();
        let mids: Vec<usize> = chains.iter().map(|c| l.get(c[1]).order()).collect();
        // the normal V4 lies in all three Sylow 2-subgroups
        assert_eq!(mids, vec![8, 8, 8, 12]);
    }

    #[test]
    fn normal_structure_of_s4() {
        let g = s4();
        let normals: Vec<usize> = normal_subgroups(&g).iter().map(|n| n.order()).collect();
        assert_eq!(normals, vec![1, 4, 12, 24]);
        assert_eq!(chief_series(&g).factor_orders(), vec![4, 3, 2]);
        assert_eq!(fitting(&g).order(), 4);
        assert_eq!(o_core(&g, CoreMode::P, 2).order(), 4);
        assert!(o_core(&g, CoreMode::PPrime, 2).is_trivial());
        assert_eq!(sylow(&g, 2).order(), 8);
        assert!(sylow(&g, 5).is_trivial());
        let fs: Vec<usize> = fitting_series(&g).iter().map(|s| s.order()).collect();
        assert_eq!(fs, vec![1, 4, 12, 24]);
    }

    #[test]
    fn a5_is_simple_and_has_no_hall_15() {
        let a5 = group(5, &[&[&[1, 2, 3]], &[&[1, 2, 3, 4, 5]]]);
        assert_eq!(a5.order(), 60);
        assert_eq!(normal_subgroups(&a5).len(), 2);
        assert_eq!(minimal_normal_subgroups(&a5), vec![a5.whole()]);
        let l = SubgroupLattice::build(a5.clone(), LatticeCaps::default()).unwrap();
        assert_eq!(l.len(), 59);
        assert!(l.hall(&[3, 5]).is_none());
        assert_eq!(l.hall(&[2, 3]).unwrap().order(), 12);
        assert_eq!(fitting_series(&a5).len(), 1);
    }

    #[test]
    fn s3_cores() {
        let s3 = group(3, &[&[&[1, 2]], &[&[1, 2, 3]]]);
        assert_eq!(o_core(&s3, CoreMode::PPrimeP, 3).order(), 3);
        assert_eq!(fitting(&s3).order(), 3);
        let l = SubgroupLattice::build(s3.clone(), LatticeCaps::default()).unwrap();
        assert_eq!(l.hall(&[3]).unwrap().order(), 3);
        assert_eq!(minimal_normal_subgroups(&s3).len(), 1);
    }
}
