//! Structural predicates: solubility, nilpotent length, supersolubility,
//! Sylow towers, and the action a subgroup induces on a normalized subgroup.

use serde::Serialize;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup};
use crate::lattice::{chief_series, fitting_series, o_pi, SubgroupLattice};
use crate::numbers::{p_part, pi_part};

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct StructureProfile {
    pub order: usize,
    pub pi: Vec<u64>,
    pub abelian: bool,
    pub nilpotent: bool,
    pub soluble: bool,
    pub supersoluble: bool,
    pub nilpotent_length: Option<usize>,
    pub exponent: u64,
}

pub fn profile(g: &FiniteGroup) -> StructureProfile {
    let soluble = is_soluble(g);
    StructureProfile {
        order: g.order(),
        pi: g.primes(),
        abelian: g.is_abelian(),
        nilpotent: is_nilpotent(g),
        soluble,
        supersoluble: soluble && is_supersoluble(g),
        nilpotent_length: nilpotent_length(g),
        exponent: g.exponent(),
    }
}

pub fn is_nilpotent(g: &FiniteGroup) -> bool {
    g.is_nilpotent_subgroup(&g.whole())
}

/// Derived series reaches 1.
pub fn is_soluble(g: &FiniteGroup) -> bool {
    let mut d = g.whole();
    loop {
        if d.is_trivial() {
            return true;
        }
        let next = g.derived_of(&d);
        if next == d {
            return false;
        }
        d = next;
    }
}

pub fn is_subgroup_soluble(g: &FiniteGroup, h: &Subgroup) -> bool {
    let mut d = h.clone();
    loop {
        if d.is_trivial() {
            return true;
        }
        let next = g.derived_of(&d);
        if next == d {
            return false;
        }
        d = next;
    }
}

/// Every chief factor has prime order.
pub fn is_supersoluble(g: &FiniteGroup) -> bool {
    chief_series(g)
        .factors
        .iter()
        .all(|f| crate::numbers::is_prime(f.order as u64))
}

/// Length of the ascending Fitting series, or `None` if it stalls below `G`.
pub fn nilpotent_length(g: &FiniteGroup) -> Option<usize> {
    let series = fitting_series(g);
    (series.last().unwrap().order() == g.order()).then(|| series.len() - 1)
}

/// Non-nilpotent with every maximal (hence every proper) subgroup nilpotent.
pub fn is_schmidt(l: &SubgroupLattice) -> bool {
    let g = l.group();
    !is_nilpotent(g)
        && l
            .lower_covers(l.top())
            .iter()
            .all(|&m| g.is_nilpotent_subgroup(l.get(m)))
}

/// Non-abelian with every maximal (hence every proper) subgroup abelian.
pub fn is_miller_moreno(l: &SubgroupLattice) -> bool {
    let g = l.group();
    !g.is_abelian()
        && l
            .lower_covers(l.top())
            .iter()
            .all(|&m| g.is_abelian_subgroup(l.get(m)))
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Dispersiveness {
    pub ore: bool,
    pub witness: Option<Vec<u64>>,
}

/// For each prefix of `ordering`, `G` has a normal subgroup whose order is the
/// product of the corresponding prime parts. Such a subgroup is a normal Hall
/// subgroup, so it can only be `O_pi(G)`.
pub fn is_phi_dispersive(g: &FiniteGroup, ordering: &[u64]) -> bool {
    let n = g.order() as u64;
    (1..=ordering.len()).all(|k| {
        let prefix = &ordering[..k];
        o_pi(g, prefix).order() as u64 == pi_part(n, prefix)
    })
}

/// Ore dispersiveness plus a greedily found ordering. The greedy step takes
/// the largest prime whose Sylow subgroup is normal in what remains; if `G` is
/// dispersive for any ordering, moving such a prime to the front keeps it so.
pub fn dispersiveness(g: &FiniteGroup) -> Dispersiveness {
    let mut desc = g.primes();
    desc.reverse();
    let ore = is_phi_dispersive(g, &desc);
    let n = g.order() as u64;
    let mut prefix: Vec<u64> = Vec::new();
    let mut rest = desc.clone();
    while !rest.is_empty() {
        let pick = rest.iter().position(|&p| {
            let mut trial = prefix.clone();
            trial.push(p);
            o_pi(g, &trial).order() as u64 == pi_part(n, &trial)
        });
        match pick {
            Some(i) => prefix.push(rest.remove(i)),
            None => {
                return Dispersiveness { ore, witness: None };
            }
        }
    }
    Dispersiveness {
        ore,
        witness: Some(prefix),
    }
}

/// `H/C_H(P)`: the automorphism group `H` induces on `P` by conjugation.
/// The quotient is taken of `H` re-indexed as a standalone group.
pub fn induced_action(g: &FiniteGroup, h: &Subgroup, p: &Subgroup) -> Result<QuotientGroup> {
    let gens_h = g.small_generating_set(h);
    let gens_p = g.small_generating_set(p);
    if !gens_h.iter().all(|&x| gens_p.iter().all(|&y| p.contains(g.conj(y, x)))) {
        return Err(Error::NotNormalized);
    }
    let c = h.intersection(&g.centralizer(gens_p));
    let e = g.subgroup_as_group(h);
    let local_c = e.restrict(&c);
    e.group.quotient(&local_c)
}

/// Iterated normal closure from `G` down stabilizes at `H`.
pub fn is_subnormal(g: &FiniteGroup, h: &Subgroup) -> bool {
    let mut k = g.whole();
    loop {
        if k == *h {
            return true;
        }
        let next = g.normal_closure_in(&k, h);
        if next == k {
            return false;
        }
        k = next;
    }
}

/// Order of a Sylow `p`-subgroup of `G`.
pub fn sylow_order(g: &FiniteGroup, p: u64) -> usize {
    p_part(g.order() as u64, p) as usize
}
