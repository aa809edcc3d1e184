//! Explicit finite groups given by a full multiplication table.
//!
//! Elements are dense indices `0..order`; index 0 is always the identity.
//! Permutations are only an input format: once a group is closed, all
//! arithmetic goes through the table.

use std::cmp::Ordering;
use std::collections::HashMap;
use std::fmt;
use std::hash::{Hash, Hasher};
use std::sync::OnceLock;

use sha2::{Digest, Sha256};

use crate::bitset::BitSet;
use crate::error::{Error, Result};
use crate::numbers::{lcm, prime_factors};
use crate::perm::Permutation;

pub const DEFAULT_ORDER_CAP: usize = 5000;

pub type Elem = u32;

#[derive(Clone)]
pub struct FiniteGroup {
    name: String,
    order: usize,
    table: Vec<Elem>,
    inverse: Vec<Elem>,
    generators: Vec<Elem>,
    element_orders: Vec<u32>,
    fingerprint: u64,
    classes: OnceLock<Vec<Vec<Elem>>>,
}

impl fmt::Debug for FiniteGroup {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_struct("FiniteGroup")
            .field("name", &self.name)
            .field("order", &self.order)
            .field("fingerprint", &format_args!("{:016x}", self.fingerprint))
            .finish()
    }
}

impl FiniteGroup {
    /// Closes `gens` under composition. Elements are numbered breadth-first
    /// from the identity, trying generators in the given order.
    pub fn from_generators(gens: &[Permutation], name: &str, cap: usize) -> Result<Self> {
        let degree = gens.first().map_or(0, Permutation::degree);
        if gens.iter().any(|g| g.degree() != degree) {
            return Err(Error::InvalidPermutation(
                "generators do not share one degree".into(),
            ));
        }
        let k = gens.len();
        let mut elems = vec![Permutation::identity(degree)];
        let mut index: HashMap<Permutation, Elem> = HashMap::new();
        index.insert(elems[0].clone(), 0);
        let mut parent: Vec<(Elem, usize)> = vec![(0, 0)];
        let mut right: Vec<Elem> = Vec::new();
        let mut i = 0;
        while i < elems.len() {
            for (s, g) in gens.iter().enumerate() {
                let y = elems[i].then(g);
                let idx = match index.get(&y) {
                    Some(&j) => j,
                    None => {
                        let j = elems.len() as Elem;
                        if elems.len() >= cap {
                            return Err(Error::ClosureExceedsCap { cap });
                        }
                        index.insert(y.clone(), j);
                        elems.push(y);
                        parent.push((i as Elem, s));
                        j
                    }
                };
                right.push(idx);
            }
            i += 1;
        }
        let n = elems.len();
        let mut table = vec![0 as Elem; n * n];
        for a in 0..n {
            table[a * n] = a as Elem;
        }
        for b in 1..n {
            let (p, s) = parent[b];
            for a in 0..n {
                let ap = table[a * n + p as usize] as usize;
                table[a * n + b] = right[ap * k + s];
            }
        }
        let mut generators: Vec<Elem> = (0..k).map(|s| right[s]).filter(|&g| g != 0).collect();
        dedup_in_place(&mut generators);
        Ok(FiniteGroup::from_table(name, n, table, generators))
    }

    /// Assembles a group from a verified table. Index 0 must be the identity.
    pub(crate) fn from_table(name: &str, order: usize, table: Vec<Elem>, generators: Vec<Elem>) -> Self {
        debug_assert_eq!(table.len(), order * order);
        let mut inverse = vec![0 as Elem; order];
        for a in 0..order {
            let row = &table[a * order..(a + 1) * order];
            let b = row.iter().position(|&x| x == 0).expect("every element has an inverse");
            inverse[a] = b as Elem;
        }
        let mut element_orders = vec![1u32; order];
        for (a, slot) in element_orders.iter_mut().enumerate().skip(1) {
            let mut x = a;
            let mut k = 1;
            while x != 0 {
                x = table[x * order + a] as usize;
                k += 1;
            }
            *slot = k;
        }
        let mut hasher = Sha256::new();
        hasher.update((order as u64).to_le_bytes());
        for &x in &table {
            hasher.update(x.to_le_bytes());
        }
        let digest = hasher.finalize();
        let fingerprint = u64::from_le_bytes(digest[..8].try_into().unwrap());
        FiniteGroup {
            name: name.to_string(),
            order,
            table,
            inverse,
            generators,
            element_orders,
            fingerprint,
            classes: OnceLock::new(),
        }
    }

    pub fn trivial(name: &str) -> Self {
        FiniteGroup::from_table(name, 1, vec![0], Vec::new())
    }

    pub fn direct_product(g: &FiniteGroup, h: &FiniteGroup, cap: usize) -> Result<Self> {
        let (m, k) = (g.order, h.order);
        let n = m.checked_mul(k).filter(|&n| n <= cap);
        let Some(n) = n else {
            return Err(Error::ClosureExceedsCap { cap });
        };
        let mut table = vec![0 as Elem; n * n];
        for a in 0..n {
            let (a1, a2) = (a / k, a % k);
            for b in 0..n {
                let (b1, b2) = (b / k, b % k);
                let x = g.mul(a1 as Elem, b1 as Elem) as usize;
                let y = h.mul(a2 as Elem, b2 as Elem) as usize;
                table[a * n + b] = (x * k + y) as Elem;
            }
        }
        let mut generators: Vec<Elem> = g.generators.iter().map(|&x| x * k as Elem).collect();
        generators.extend(h.generators.iter().copied());
        let name = format!("{} x {}", g.name, h.name);
        Ok(FiniteGroup::from_table(&name, n, table, generators))
    }

    pub fn name(&self) -> &str {
        &self.name
    }

    pub fn with_name(mut self, name: &str) -> Self {
        self.name = name.to_string();
        self
    }

    pub fn order(&self) -> usize {
        self.order
    }

    pub fn identity(&self) -> Elem {
        0
    }

    pub fn fingerprint(&self) -> u64 {
        self.fingerprint
    }

    pub fn generators(&self) -> &[Elem] {
        &self.generators
    }

    #[inline]
    pub fn mul(&self, a: Elem, b: Elem) -> Elem {
        self.table[a as usize * self.order + b as usize]
    }

    #[inline]
    pub fn inv(&self, a: Elem) -> Elem {
        self.inverse[a as usize]
    }

    /// `g^-1 x g`
    #[inline]
    pub fn conj(&self, x: Elem, g: Elem) -> Elem {
        self.mul(self.mul(self.inv(g), x), g)
    }

    /// `a^-1 b^-1 a b`
    pub fn commutator(&self, a: Elem, b: Elem) -> Elem {
        self.mul(self.mul(self.inv(a), self.inv(b)), self.mul(a, b))
    }

    pub fn element_order(&self, a: Elem) -> u32 {
        self.element_orders[a as usize]
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> {
        0..self.order as Elem
    }

    pub fn table(&self) -> &[Elem] {
        &self.table
    }

    pub fn primes(&self) -> Vec<u64> {
        prime_factors(self.order as u64)
    }

    pub fn exponent(&self) -> u64 {
        self.element_orders.iter().fold(1, |acc, &o| lcm(acc, o as u64))
    }

    pub fn is_abelian(&self) -> bool {
        let g = &self.generators;
        g.iter()
            .enumerate()
            .all(|(i, &a)| g[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    /// Element-order census: `census[k]` counts elements of order `k`.
    pub fn order_census(&self) -> Vec<usize> {
        let max = self.element_orders.iter().copied().max().unwrap_or(1) as usize;
        let mut census = vec![0; max + 1];
        for &o in &self.element_orders {
            census[o as usize] += 1;
        }
        census
    }

    /// Conjugacy classes, each sorted, ordered by their least element.
    pub fn conjugacy_classes(&self) -> &[Vec<Elem>] {
        self.classes.get_or_init(|| {
            let mut seen = BitSet::new(self.order);
            let mut classes = Vec::new();
            for x in self.elements() {
                if seen.contains(x as usize) {
                    continue;
                }
                seen.insert(x as usize);
                let mut class = vec![x];
                let mut i = 0;
                while i < class.len() {
                    let y = class[i];
                    for &g in &self.generators {
                        let z = self.conj(y, g);
                        if seen.insert(z as usize) {
                            class.push(z);
                        }
                    }
                    i += 1;
                }
                class.sort_unstable();
                classes.push(class);
            }
            classes
        })
    }

    pub fn class_representatives(&self) -> impl Iterator<Item = Elem> + '_ {
        self.conjugacy_classes().iter().map(|c| c[0])
    }

    // ---- subgroups ----------------------------------------------------

    pub(crate) fn subgroup_from_bits(&self, members: BitSet) -> Subgroup {
        let order = members.count();
        Subgroup {
            parent: self.fingerprint,
            members,
            order,
        }
    }

    pub fn trivial_subgroup(&self) -> Subgroup {
        self.subgroup_from_bits(BitSet::from_indices(self.order, [0]))
    }

    pub fn whole(&self) -> Subgroup {
        self.subgroup_from_bits(BitSet::full(self.order))
    }

    /// Checks that `members` is a subgroup and wraps it.
    pub fn subgroup(&self, members: BitSet) -> Option<Subgroup> {
        if members.width() != self.order || !members.contains(0) {
            return None;
        }
        let elems: Vec<Elem> = members.iter().map(|x| x as Elem).collect();
        for &a in &elems {
            for &b in &elems {
                if !members.contains(self.mul(a, b) as usize) {
                    return None;
                }
            }
        }
        Some(self.subgroup_from_bits(members))
    }

    /// Smallest subgroup containing `h` and `g`.
    ///
    /// `<H, g>` is a union of left cosets of `H`, so it suffices to close the
    /// growing set under right multiplication by `g`, adding whole cosets.
    pub fn extend(&self, h: &Subgroup, g: Elem) -> Subgroup {
        self.extend_bounded(h, g, usize::MAX).expect("unbounded")
    }

    /// As [`extend`](Self::extend), giving up once the result would exceed `limit` elements.
    pub fn extend_bounded(&self, h: &Subgroup, g: Elem, limit: usize) -> Option<Subgroup> {
        if h.contains(g) {
            return Some(h.clone());
        }
        let base: Vec<Elem> = h.elements().collect();
        let mut members = h.members.clone();
        let mut list = base.clone();
        let mut i = 0;
        while i < list.len() {
            let y = self.mul(list[i], g);
            if !members.contains(y as usize) {
                if list.len() + base.len() > limit {
                    return None;
                }
                for &b in &base {
                    let z = self.mul(y, b);
                    members.insert(z as usize);
                    list.push(z);
                }
            }
            i += 1;
        }
        Some(self.subgroup_from_bits(members))
    }

    pub fn generated(&self, seed: impl IntoIterator<Item = Elem>) -> Subgroup {
        let mut h = self.trivial_subgroup();
        for g in seed {
            h = self.extend(&h, g);
        }
        h
    }

    pub fn join(&self, a: &Subgroup, b: &Subgroup) -> Subgroup {
        let mut h = a.clone();
        for g in self.small_generating_set(b) {
            h = self.extend(&h, g);
        }
        h
    }

    /// A generating set of `h` found greedily in element order; at most log2 |h| elements.
    pub fn small_generating_set(&self, h: &Subgroup) -> Vec<Elem> {
        let mut cur = self.trivial_subgroup();
        let mut gens = Vec::new();
        for x in h.elements() {
            if !cur.contains(x) {
                cur = self.extend(&cur, x);
                gens.push(x);
                if cur.order == h.order {
                    break;
                }
            }
        }
        gens
    }

    pub fn conjugate_subgroup(&self, h: &Subgroup, g: Elem) -> Subgroup {
        let members = BitSet::from_indices(self.order, h.elements().map(|x| self.conj(x, g) as usize));
        self.subgroup_from_bits(members)
    }

    pub fn is_normal(&self, h: &Subgroup) -> bool {
        self.is_normalized_by(h, &self.generators)
    }

    pub fn is_normal_in(&self, ambient: &Subgroup, h: &Subgroup) -> bool {
        self.is_normalized_by(h, &self.small_generating_set(ambient))
    }

    fn is_normalized_by(&self, h: &Subgroup, by: &[Elem]) -> bool {
        let gens = self.small_generating_set(h);
        gens.iter().all(|&x| by.iter().all(|&t| h.contains(self.conj(x, t))))
    }

    pub fn normal_closure(&self, h: &Subgroup) -> Subgroup {
        self.normal_closure_by(h, &self.generators)
    }

    pub fn normal_closure_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        self.normal_closure_by(h, &self.small_generating_set(ambient))
    }

    fn normal_closure_by(&self, h: &Subgroup, by: &[Elem]) -> Subgroup {
        let mut n = h.clone();
        let mut gens = self.small_generating_set(h);
        let mut i = 0;
        while i < gens.len() {
            let x = gens[i];
            for &t in by {
                let y = self.conj(x, t);
                if !n.contains(y) {
                    n = self.extend(&n, y);
                    gens.push(y);
                }
            }
            i += 1;
        }
        n
    }

    /// Normal closure of a single element.
    pub fn element_normal_closure(&self, x: Elem) -> Subgroup {
        self.normal_closure(&self.generated([x]))
    }

    /// Largest normal subgroup of `G` inside `h`.
    pub fn core(&self, h: &Subgroup) -> Subgroup {
        self.core_by(h, &self.generators)
    }

    pub fn core_in(&self, ambient: &Subgroup, h: &Subgroup) -> Subgroup {
        self.core_by(h, &self.small_generating_set(ambient))
    }

    fn core_by(&self, h: &Subgroup, by: &[Elem]) -> Subgroup {
        let mut c = h.members.clone();
        loop {
            let before = c.count();
            for &t in by {
                let elems: Vec<usize> = c.iter().collect();
                for x in elems {
                    if !c.contains(self.conj(x as Elem, t) as usize) {
                        c.remove(x);
                    }
                }
            }
            if c.count() == before {
                break;
            }
        }
        self.subgroup_from_bits(c)
    }

    pub fn centralizer(&self, set: impl IntoIterator<Item = Elem>) -> Subgroup {
        let set: Vec<Elem> = set.into_iter().collect();
        let members = BitSet::from_indices(
            self.order,
            self.elements()
                .filter(|&g| set.iter().all(|&s| self.mul(g, s) == self.mul(s, g)))
                .map(|g| g as usize),
        );
        self.subgroup_from_bits(members)
    }

    pub fn centralizer_of(&self, h: &Subgroup) -> Subgroup {
        self.centralizer(self.small_generating_set(h))
    }

    pub fn normalizer(&self, h: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(h);
        let members = BitSet::from_indices(
            self.order,
            self.elements()
                .filter(|&g| gens.iter().all(|&x| h.contains(self.conj(x, g))))
                .map(|g| g as usize),
        );
        self.subgroup_from_bits(members)
    }

    pub fn center(&self) -> Subgroup {
        self.centralizer(self.generators.clone())
    }

    /// `{g : [g, h] in lower for all h in upper}` for normal `lower <= upper`.
    pub fn factor_centralizer(&self, upper: &Subgroup, lower: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(upper);
        let members = BitSet::from_indices(
            self.order,
            self.elements()
                .filter(|&g| gens.iter().all(|&x| lower.contains(self.commutator(g, x))))
                .map(|g| g as usize),
        );
        self.subgroup_from_bits(members)
    }

    pub fn commutator_subgroup(&self) -> Subgroup {
        self.derived_of(&self.whole())
    }

    /// Derived subgroup of `h`: the normal closure in `h` of the commutators of its generators.
    pub fn derived_of(&self, h: &Subgroup) -> Subgroup {
        let gens = self.small_generating_set(h);
        let mut seed = Vec::new();
        for (i, &a) in gens.iter().enumerate() {
            for &b in &gens[i + 1..] {
                seed.push(self.commutator(a, b));
            }
        }
        let c = self.generated(seed);
        self.normal_closure_by(&c, &gens)
    }

    /// Element set `A B = {ab}`.
    pub fn product_set(&self, a: &Subgroup, b: &Subgroup) -> BitSet {
        let bs: Vec<Elem> = b.elements().collect();
        let mut out = BitSet::new(self.order);
        for x in a.elements() {
            for &y in &bs {
                out.insert(self.mul(x, y) as usize);
            }
        }
        out
    }

    /// Product of subgroups when it is itself a subgroup (e.g. one factor normal).
    pub fn product_subgroup(&self, a: &Subgroup, b: &Subgroup) -> Option<Subgroup> {
        let set = self.product_set(a, b);
        let j = self.join(a, b);
        (j.members == set).then_some(j)
    }

    pub fn is_nilpotent_subgroup(&self, h: &Subgroup) -> bool {
        // nilpotent iff for each p the p-elements number exactly |h|_p
        let mut counts: HashMap<u64, usize> = HashMap::new();
        for x in h.elements() {
            let o = self.element_order(x) as u64;
            if o > 1 {
                let ps = prime_factors(o);
                if ps.len() == 1 {
                    *counts.entry(ps[0]).or_default() += 1;
                }
            }
        }
        prime_factors(h.order as u64)
            .into_iter()
            .all(|p| counts.get(&p).copied().unwrap_or(0) + 1 == crate::numbers::p_part(h.order as u64, p) as usize)
    }

    pub fn is_abelian_subgroup(&self, h: &Subgroup) -> bool {
        let gens = self.small_generating_set(h);
        gens.iter()
            .enumerate()
            .all(|(i, &a)| gens[i + 1..].iter().all(|&b| self.mul(a, b) == self.mul(b, a)))
    }

    // ---- derived groups ------------------------------------------------

    pub fn quotient(&self, n: &Subgroup) -> Result<QuotientGroup> {
        self.check_parent(n);
        if !self.is_normal(n) {
            return Err(Error::NotNormal {
                group: self.name.clone(),
                order: n.order,
            });
        }
        let kernel: Vec<Elem> = n.elements().collect();
        let m = self.order / n.order;
        let mut label = vec![Elem::MAX; self.order];
        let mut reps = Vec::with_capacity(m);
        for x in self.elements() {
            if label[x as usize] != Elem::MAX {
                continue;
            }
            let c = reps.len() as Elem;
            reps.push(x);
            for &k in &kernel {
                label[self.mul(x, k) as usize] = c;
            }
        }
        let mut table = vec![0 as Elem; m * m];
        for (i, &a) in reps.iter().enumerate() {
            for (j, &b) in reps.iter().enumerate() {
                table[i * m + j] = label[self.mul(a, b) as usize];
            }
        }
        let mut generators: Vec<Elem> = self
            .generators
            .iter()
            .map(|&g| label[g as usize])
            .filter(|&g| g != 0)
            .collect();
        dedup_in_place(&mut generators);
        let name = format!("{}/N{}", self.name, n.order);
        Ok(QuotientGroup {
            group: FiniteGroup::from_table(&name, m, table, generators),
            projection: label,
            kernel: n.clone(),
        })
    }

    /// The subgroup `h` as a group in its own right, elements in ascending parent order.
    pub fn subgroup_as_group(&self, h: &Subgroup) -> Embedding {
        self.check_parent(h);
        let elems: Vec<Elem> = h.elements().collect();
        let mut local = vec![Elem::MAX; self.order];
        for (i, &x) in elems.iter().enumerate() {
            local[x as usize] = i as Elem;
        }
        let m = elems.len();
        let mut table = vec![0 as Elem; m * m];
        for (i, &a) in elems.iter().enumerate() {
            for (j, &b) in elems.iter().enumerate() {
                table[i * m + j] = local[self.mul(a, b) as usize];
            }
        }
        let generators = self
            .small_generating_set(h)
            .into_iter()
            .map(|g| local[g as usize])
            .collect();
        let name = format!("{}[{}]", self.name, m);
        Embedding {
            group: FiniteGroup::from_table(&name, m, table, generators),
            elements: elems,
            local,
            parent: self.fingerprint,
        }
    }

    /// The permutation image of `upper` acting on the left cosets of `lower`,
    /// i.e. `upper / core_upper(lower)`.
    pub fn coset_action(&self, upper: &Subgroup, lower: &Subgroup) -> FiniteGroup {
        let lower_elems: Vec<Elem> = lower.elements().collect();
        let mut label = vec![u32::MAX; self.order];
        let mut reps = Vec::new();
        for x in upper.elements() {
            if label[x as usize] != u32::MAX {
                continue;
            }
            let c = reps.len() as u32;
            reps.push(x);
            for &k in &lower_elems {
                label[self.mul(x, k) as usize] = c;
            }
        }
        let gens: Vec<Permutation> = self
            .small_generating_set(upper)
            .into_iter()
            .map(|g| {
                let images = reps.iter().map(|&r| label[self.mul(g, r) as usize] as usize).collect();
                Permutation::from_images(images).expect("coset action is a permutation")
            })
            .collect();
        let name = format!("{}:{}/{}", self.name, upper.order, lower.order);
        FiniteGroup::from_generators(&gens, &name, usize::MAX).expect("no cap")
    }

    fn check_parent(&self, h: &Subgroup) {
        assert_eq!(h.parent, self.fingerprint, "subgroup belongs to a different group");
    }

    /// Spot check of the group axioms: identity, inverses, and associativity on
    /// all triples when small, otherwise on a deterministic sample.
    pub fn check_axioms(&self) -> bool {
        let n = self.order as Elem;
        let ident = self.elements().all(|a| self.mul(0, a) == a && self.mul(a, 0) == a);
        let inv = self.elements().all(|a| self.mul(a, self.inv(a)) == 0 && self.mul(self.inv(a), a) == 0);
        let step = if n <= 40 { 1 } else { (n / 23).max(1) };
        let sample: Vec<Elem> = (0..n).step_by(step as usize).collect();
        let assoc = sample.iter().all(|&a| {
            sample.iter().all(|&b| {
                sample
                    .iter()
                    .all(|&c| self.mul(self.mul(a, b), c) == self.mul(a, self.mul(b, c)))
            })
        });
        ident && inv && assoc
    }
}

fn dedup_in_place(v: &mut Vec<Elem>) {
    let mut seen = std::collections::HashSet::new();
    v.retain(|x| seen.insert(*x));
}

/// A subgroup of a specific parent group, as a member set.
///
/// Equality is member-set equality within the same parent; subgroups of
/// different parents never compare equal.
#[derive(Clone, Debug)]
pub struct Subgroup {
    parent: u64,
    members: BitSet,
    order: usize,
}

impl Subgroup {
    pub fn order(&self) -> usize {
        self.order
    }

    pub fn parent_fingerprint(&self) -> u64 {
        self.parent
    }

    #[inline]
    pub fn contains(&self, x: Elem) -> bool {
        self.members.contains(x as usize)
    }

    pub fn members(&self) -> &BitSet {
        &self.members
    }

    pub fn elements(&self) -> impl Iterator<Item = Elem> + '_ {
        self.members.iter().map(|x| x as Elem)
    }

    pub fn is_trivial(&self) -> bool {
        self.order == 1
    }

    pub fn is_subgroup_of(&self, other: &Subgroup) -> bool {
        self.parent == other.parent && self.members.is_subset(&other.members)
    }

    pub fn intersection(&self, other: &Subgroup) -> Subgroup {
        assert_eq!(self.parent, other.parent);
        let members = self.members.intersection(&other.members);
        let order = members.count();
        Subgroup {
            parent: self.parent,
            members,
            order,
        }
    }

    pub fn index_in(&self, other: &Subgroup) -> usize {
        other.order / self.order
    }
}

impl PartialEq for Subgroup {
    fn eq(&self, other: &Self) -> bool {
        self.parent == other.parent && self.members == other.members
    }
}

impl Eq for Subgroup {}

impl Hash for Subgroup {
    fn hash<H: Hasher>(&self, state: &mut H) {
        self.parent.hash(state);
        self.members.hash(state);
    }
}

/// Deterministic subgroup order: by order, then by ascending member list.
impl Ord for Subgroup {
    fn cmp(&self, other: &Self) -> Ordering {
        self.order
            .cmp(&other.order)
            .then_with(|| self.members.cmp_members(&other.members))
            .then_with(|| self.parent.cmp(&other.parent))
    }
}

impl PartialOrd for Subgroup {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// `G/N` materialized as a group, with the projection from `G`.
#[derive(Debug)]
pub struct QuotientGroup {
    pub group: FiniteGroup,
    pub projection: Vec<Elem>,
    pub kernel: Subgroup,
}

impl QuotientGroup {
    pub fn project(&self, x: Elem) -> Elem {
        self.projection[x as usize]
    }

    /// Image `HN/N` of a subgroup of `G`.
    pub fn image(&self, h: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(self.group.order(), h.elements().map(|x| self.project(x) as usize));
        self.group.subgroup_from_bits(members)
    }

    /// Full preimage in `G` of a subgroup of the quotient.
    pub fn preimage(&self, parent: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(
            parent.order(),
            parent
                .elements()
                .filter(|&x| h.contains(self.project(x)))
                .map(|x| x as usize),
        );
        parent.subgroup_from_bits(members)
    }
}

/// A subgroup re-indexed as a standalone group.
#[derive(Debug)]
pub struct Embedding {
    pub group: FiniteGroup,
    elements: Vec<Elem>,
    local: Vec<Elem>,
    parent: u64,
}

impl Embedding {
    pub fn lift(&self, x: Elem) -> Elem {
        self.elements[x as usize]
    }

    /// Restricts a parent subgroup contained in the embedded one.
    pub fn restrict(&self, h: &Subgroup) -> Subgroup {
        assert_eq!(h.parent, self.parent);
        let members = BitSet::from_indices(
            self.group.order(),
            h.elements().map(|x| {
                let l = self.local[x as usize];
                assert!(l != Elem::MAX, "subgroup not contained in the embedded subgroup");
                l as usize
            }),
        );
        self.group.subgroup_from_bits(members)
    }

    pub fn lift_subgroup(&self, parent: &FiniteGroup, h: &Subgroup) -> Subgroup {
        let members = BitSet::from_indices(parent.order(), h.elements().map(|x| self.lift(x) as usize));
        parent.subgroup_from_bits(members)
    }
}
