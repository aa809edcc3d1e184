use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::seq::SliceRandom;
use rand::Rng;

use crate::error::{Error, Result};
use crate::formation::{f_hypercentre, is_f_critical, is_f_normal_maximal, sigma_closure_check, FSubnormality, Formation};
use crate::group::{Elem, FiniteGroup, Subgroup};
use crate::lattice::{fitting, minimal_normal_over, normal_subgroups, ChiefFactor, SubgroupLattice};
use crate::numbers::{gcd, p_part, prime_power_base};
use crate::structure::{dispersiveness, is_miller_moreno, is_phi_dispersive, is_schmidt, is_subgroup_soluble};

use super::{Analyzer, TheoremReport};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum LemmaId {
    /// Part 1 to 4 of the closure properties of `F`-subnormality.
    L2_1(u8),
    L2_2,
    L2_3,
    L2_4,
    L2_5,
    L2_6,
    L2_7,
    L2_9,
    L2_10,
    L2_13,
    L2_14,
    L2_15,
    P3_1,
    P3_4,
}

impl LemmaId {
    pub const ALL: [LemmaId; 17] = [
        LemmaId::L2_1(1),
        LemmaId::L2_1(2),
        LemmaId::L2_1(3),
        LemmaId::L2_1(4),
        LemmaId::L2_2,
        LemmaId::L2_3,
        LemmaId::L2_4,
        LemmaId::L2_5,
        LemmaId::L2_6,
        LemmaId::L2_7,
        LemmaId::L2_9,
        LemmaId::L2_10,
        LemmaId::L2_13,
        LemmaId::L2_14,
        LemmaId::L2_15,
        LemmaId::P3_1,
        LemmaId::P3_4,
    ];

    /// Parses an id; `2.1` expands to its four parts.
    pub fn parse_many(s: &str) -> Result<Vec<LemmaId>> {
        if s.trim() == "2.1" {
            return Ok((1..=4).map(LemmaId::L2_1).collect());
        }
        Ok(vec![s.parse()?])
    }
}

impl FromStr for LemmaId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        let t = s.trim();
        Ok(match t {
            "2.1(1)" => LemmaId::L2_1(1),
            "2.1(2)" => LemmaId::L2_1(2),
            "2.1(3)" => LemmaId::L2_1(3),
            "2.1(4)" => LemmaId::L2_1(4),
            "2.2" => LemmaId::L2_2,
            "2.3" => LemmaId::L2_3,
            "2.4" => LemmaId::L2_4,
            "2.5" => LemmaId::L2_5,
            "2.6" => LemmaId::L2_6,
            "2.7" => LemmaId::L2_7,
            "2.9" => LemmaId::L2_9,
            "2.10" => LemmaId::L2_10,
            "2.13" => LemmaId::L2_13,
            "2.14" => LemmaId::L2_14,
            "2.15" => LemmaId::L2_15,
            "P3.1" | "3.1" => LemmaId::P3_1,
            "P3.4" | "3.4" => LemmaId::P3_4,
            _ => return Err(Error::InvalidParams(format!("unknown lemma `{t}`"))),
        })
    }
}

impl fmt::Display for LemmaId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            LemmaId::L2_1(k) => write!(f, "2.1({k})"),
            LemmaId::L2_2 => f.write_str("2.2"),
            LemmaId::L2_3 => f.write_str("2.3"),
            LemmaId::L2_4 => f.write_str("2.4"),
            LemmaId::L2_5 => f.write_str("2.5"),
            LemmaId::L2_6 => f.write_str("2.6"),
            LemmaId::L2_7 => f.write_str("2.7"),
            LemmaId::L2_9 => f.write_str("2.9"),
            LemmaId::L2_10 => f.write_str("2.10"),
            LemmaId::L2_13 => f.write_str("2.13"),
            LemmaId::L2_14 => f.write_str("2.14"),
            LemmaId::L2_15 => f.write_str("2.15"),
            LemmaId::P3_1 => f.write_str("P3.1"),
            LemmaId::P3_4 => f.write_str("P3.4"),
        }
    }
}

/// The objects one lemma instance is about. Subgroups are lattice indices;
/// which slots are used depends on the lemma.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct LemmaInstance {
    pub formation: Formation,
    pub subgroups: Vec<usize>,
    pub n: usize,
    pub r: u32,
    pub prime: u64,
    pub element: Elem,
    pub ordering: Vec<u64>,
    /// For `P3.1`: 1 uses `N_G(A')`, 2 uses `N_G(A)`, 3 uses `A` itself.
    /// For `P3.4`: 0 checks `M`, 1 checks `G_p M`.
    pub variant: u8,
}

impl LemmaInstance {
    pub fn new(formation: Formation) -> Self {
        LemmaInstance {
            formation,
            subgroups: Vec::new(),
            n: 1,
            r: 0,
            prime: 2,
            element: 0,
            ordering: Vec::new(),
            variant: 0,
        }
    }

    fn with_subgroups(mut self, s: Vec<usize>) -> Self {
        self.subgroups = s;
        self
    }

    fn label(&self, id: LemmaId, l: &SubgroupLattice) -> String {
        let subs: Vec<String> = self
            .subgroups
            .iter()
            .map(|&i| format!("#{i}(order {})", l.get(i).order()))
            .collect();
        let mut parts = vec![format!("F={}", self.formation)];
        if !subs.is_empty() {
            parts.push(format!("subgroups=[{}]", subs.join(", ")));
        }
        match id {
            LemmaId::L2_3 => parts.push(format!("n={}", self.n)),
            LemmaId::L2_9 => parts.push(format!("x={}", self.element)),
            LemmaId::L2_13 => {
                parts[0] = format!("ordering={:?}", self.ordering);
            }
            LemmaId::P3_1 => {
                parts[0] = format!("variant={}", self.variant);
            }
            LemmaId::P3_4 => parts.push(format!("r={} p={} variant={}", self.r, self.prime, self.variant)),
            _ => {}
        }
        parts.join(" ")
    }

    fn sub<'l>(&self, l: &'l SubgroupLattice, k: usize) -> Result<&'l Subgroup> {
        let i = *self
            .subgroups
            .get(k)
            .ok_or_else(|| Error::InvalidParams(format!("instance needs at least {} subgroups", k + 1)))?;
        if i >= l.len() {
            return Err(Error::InvalidParams(format!("subgroup index {i} out of range")));
        }
        Ok(l.get(i))
    }
}

/// Lattice indices of the normal subgroups.
fn normal_indices(l: &SubgroupLattice) -> Vec<usize> {
    normal_subgroups(l.group()).iter().map(|n| l.idx(n)).collect()
}

fn below(l: &SubgroupLattice, h: usize) -> Vec<usize> {
    (0..=h).filter(|&i| l.get(i).is_subgroup_of(l.get(h))).collect()
}

fn above(l: &SubgroupLattice, h: usize) -> Vec<usize> {
    (h..l.len()).filter(|&i| l.get(h).is_subgroup_of(l.get(i))).collect()
}

fn factorizes(g: &FiniteGroup, a: &Subgroup, b: &Subgroup) -> bool {
    a.order() * b.order() == g.order() * a.intersection(b).order()
}

/// The formations each lemma is sampled over.
fn sample_formations(id: LemmaId, an: &Analyzer<'_>) -> Vec<Formation> {
    let base = vec![
        Formation::nilpotent(),
        Formation::supersoluble(),
        Formation::nilpotent_length(2),
        Formation::soluble(),
    ];
    match id {
        LemmaId::L2_10 => {
            let mut v = vec![Formation::nilpotent(), Formation::abelian_exponent(2), Formation::abelian_exponent(6)];
            v.extend(an.group().primes().into_iter().take(2).map(Formation::p_groups));
            v
        }
        LemmaId::L2_6 | LemmaId::L2_9 | LemmaId::L2_13 | LemmaId::P3_1 => vec![Formation::supersoluble()],
        _ => base,
    }
}

/// Draws up to `count` instances of `id` per sampled formation. Deterministic
/// for a given rng state.
pub fn lemma_instances<R: Rng>(id: LemmaId, an: &Analyzer<'_>, rng: &mut R, count: usize) -> Vec<LemmaInstance> {
    let l = an.lattice();
    let g = an.group();
    let all: Vec<usize> = (0..l.len()).collect();
    let mut out = Vec::new();
    for f in sample_formations(id, an) {
        let base = LemmaInstance::new(f.clone());
        match id {
            LemmaId::L2_1(1) | LemmaId::L2_9 => {
                let pairs: Vec<(usize, usize)> = if id == LemmaId::L2_9 {
                    let mut v = Vec::new();
                    for a in 0..l.len() {
                        for b in 0..l.len() {
                            if factorizes(g, l.get(a), l.get(b)) {
                                v.push((a, b));
                            }
                        }
                    }
                    v
                } else {
                    Vec::new()
                };
                for _ in 0..count {
                    let (a, b) = match pairs.choose(rng) {
                        Some(&p) if rng.gen_bool(0.75) => p,
                        _ => (*all.choose(rng).unwrap(), *all.choose(rng).unwrap()),
                    };
                    let mut inst = base.clone().with_subgroups(vec![a, b]);
                    inst.element = rng.gen_range(0..g.order()) as Elem;
                    out.push(inst);
                }
            }
            LemmaId::L2_1(2) => {
                let normals = normal_indices(l);
                for _ in 0..count {
                    let h = *all.choose(rng).unwrap();
                    let n = *normals.choose(rng).unwrap();
                    out.push(base.clone().with_subgroups(vec![h, n]));
                }
            }
            LemmaId::L2_1(3) => {
                for _ in 0..count {
                    let h = *all.choose(rng).unwrap();
                    let k = *below(l, h).choose(rng).unwrap();
                    out.push(base.clone().with_subgroups(vec![h, k]));
                }
            }
            LemmaId::L2_1(_) => {
                let over = above(l, l.idx(&f.residual(g)));
                for _ in 0..count {
                    let k = match over.choose(rng) {
                        Some(&k) if rng.gen_bool(0.5) => k,
                        _ => *all.choose(rng).unwrap(),
                    };
                    out.push(base.clone().with_subgroups(vec![k]));
                }
            }
            LemmaId::L2_2 => {
                for _ in 0..count {
                    out.push(base.clone().with_subgroups(vec![*all.choose(rng).unwrap()]));
                }
            }
            LemmaId::L2_3 => {
                for n in 1..=count.min(4) {
                    let mut inst = base.clone();
                    inst.n = n;
                    out.push(inst);
                }
            }
            LemmaId::L2_4 | LemmaId::L2_5 | LemmaId::L2_6 | LemmaId::L2_10 => out.push(base.clone()),
            LemmaId::L2_7 => {
                let ps: Vec<usize> = normal_indices(l)
                    .into_iter()
                    .filter(|&i| prime_power_base(l.get(i).order() as u64).is_some())
                    .collect();
                for _ in 0..count {
                    if let Some(&e) = ps.choose(rng) {
                        out.push(base.clone().with_subgroups(vec![e]));
                    }
                }
            }
            LemmaId::L2_13 => {
                let normals = normal_indices(l);
                let mut primes = g.primes();
                for _ in 0..count {
                    primes.shuffle(rng);
                    let a = *normals.choose(rng).unwrap();
                    let b = *normals.choose(rng).unwrap();
                    let mut inst = base.clone().with_subgroups(vec![a, b]);
                    inst.ordering = primes.clone();
                    out.push(inst);
                }
            }
            LemmaId::L2_14 => {
                let normals = normal_indices(l);
                for _ in 0..count {
                    out.push(base.clone().with_subgroups(vec![*normals.choose(rng).unwrap()]));
                }
            }
            LemmaId::L2_15 => {
                let fit = fitting(g);
                let supplements: Vec<usize> = (0..l.len())
                    .filter(|&i| g.join(l.get(i), &fit).order() == g.order() && f.contains_subgroup(g, l.get(i)))
                    .collect();
                for _ in 0..count {
                    let h = match supplements.choose(rng) {
                        Some(&h) if rng.gen_bool(0.8) => h,
                        _ => *all.choose(rng).unwrap(),
                    };
                    let m = *above(l, h).choose(rng).unwrap();
                    out.push(base.clone().with_subgroups(vec![h, m]));
                }
            }
            LemmaId::P3_1 => {
                for variant in 1..=3 {
                    let mut inst = base.clone();
                    inst.variant = variant;
                    out.push(inst);
                }
            }
            LemmaId::P3_4 => {
                let m_r = [
                    (Formation::nilpotent(), 0),
                    (Formation::supersoluble(), 1),
                    (Formation::nilpotent_length(2), 1),
                    (Formation::nilpotent_length(3), 2),
                ];
                if f != Formation::nilpotent() {
                    continue;
                }
                for (m, r) in m_r {
                    for variant in 0..=1 {
                        let mut inst = LemmaInstance::new(m.clone());
                        inst.r = r;
                        inst.variant = variant;
                        inst.prime = *g.primes().choose(rng).unwrap_or(&2);
                        out.push(inst);
                    }
                }
            }
        }
    }
    out
}

pub fn verify_lemma(id: LemmaId, an: &Analyzer<'_>, inst: &LemmaInstance) -> Result<TheoremReport> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let f = &inst.formation;
    let fl = f.flags();
    let report = TheoremReport::new(format!("lemma {id}"), g.name(), inst.label(id, l));
    let not_hereditary = |r: TheoremReport| r.note("F is not known to be hereditary").not_applicable();
    let not_saturated = |r: TheoremReport| r.note("F is not known to be saturated").not_applicable();
    match id {
        LemmaId::L2_1(1) => {
            if !fl.hereditary {
                return Ok(not_hereditary(report));
            }
            let (h, k) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
            let o = an.subnormality(f);
            let lhs = o.is_f_subnormal(l.idx(h));
            let hk = l.idx(&h.intersection(k));
            let rhs = o.is_f_subnormal_in(hk, l.idx(k));
            Ok(report.implication(lhs, rhs, || "H is F-subnormal in G but H meet K is not F-subnormal in K".into()))
        }
        LemmaId::L2_1(2) => {
            let (h, n) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
            if !g.is_normal(n) {
                return Ok(report.note("N is not normal").not_applicable());
            }
            let lhs = an.subnormality(f).is_f_subnormal(l.idx(h));
            let (q, ql) = an.quotient_lattice(n)?;
            let image = ql.idx(&q.image(h));
            let rhs = FSubnormality::new(&ql, f).is_f_subnormal(image);
            Ok(report.implication(lhs, rhs, || "H is F-subnormal in G but HN/N is not F-subnormal in G/N".into()))
        }
        LemmaId::L2_1(3) => {
            let (h, k) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
            if !k.is_subgroup_of(h) {
                return Ok(report.note("K is not contained in H").not_applicable());
            }
            let o = an.subnormality(f);
            let (hi, ki) = (l.idx(h), l.idx(k));
            let lhs = o.is_f_subnormal(hi) && o.is_f_subnormal_in(ki, hi);
            let rhs = o.is_f_subnormal(ki);
            Ok(report.implication(lhs, rhs, || "K is F-subnormal in H and H in G, but K is not F-subnormal in G".into()))
        }
        LemmaId::L2_1(_) => {
            if !fl.hereditary {
                return Ok(not_hereditary(report));
            }
            let k = inst.sub(l, 0)?;
            let lhs = f.residual(g).is_subgroup_of(k);
            let rhs = an.subnormality(f).is_f_subnormal(l.idx(k));
            Ok(report.implication(lhs, rhs, || "K contains the F-residual but is not F-subnormal".into()))
        }
        LemmaId::L2_2 => {
            if !fl.hereditary {
                return Ok(not_hereditary(report));
            }
            let h = inst.sub(l, 0)?;
            let lhs = f.contains(g);
            let rhs = an.subnormality(f).is_f_subnormal(l.idx(h));
            Ok(report.implication(lhs, rhs, || "G is in F but H is not F-subnormal".into()))
        }
        LemmaId::L2_3 => {
            if !fl.hereditary {
                return Ok(not_hereditary(report));
            }
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            let n = inst.n;
            if n == 0 {
                return Err(Error::InvalidParams("n must be positive".into()));
            }
            let o = an.subnormality(f);
            let (lhs, _) = o.all_n_maximal_f_subnormal(n);
            let above_in_f: Vec<usize> = l
                .n_maximal_indices(l.top(), n - 1)
                .into_iter()
                .filter(|&h| !f.contains_subgroup(g, l.get(h)))
                .collect();
            let (below_ok, bad) = o.all_n_maximal_f_subnormal(n + 1);
            Ok(report.implication(lhs, above_in_f.is_empty() && below_ok, || {
                format!(
                    "all {n}-maximal subgroups are F-subnormal; ({})-maximal outside F: {}; ({})-maximal not F-subnormal: {}",
                    n - 1,
                    an.orders(&above_in_f),
                    n + 1,
                    an.orders(&bad)
                )
            }))
        }
        LemmaId::L2_4 => {
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            if !an.is_soluble() {
                return Ok(report.note("G is not soluble").not_applicable());
            }
            lemma_2_4(an, f, report)
        }
        LemmaId::L2_5 => {
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            lemma_2_5(an, f, report)
        }
        LemmaId::L2_6 => lemma_2_6(an, report),
        LemmaId::L2_7 => {
            let e = inst.sub(l, 0)?;
            let Some(p) = prime_power_base(e.order() as u64) else {
                return Ok(report.note("E is not a nontrivial p-group").not_applicable());
            };
            if !g.is_normal(e) {
                return Ok(report.note("E is not normal").not_applicable());
            }
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            let z = f_hypercentre(g, f)?;
            let lhs = e.is_subgroup_of(&z);
            let c = g.centralizer_of(e);
            let rhs = f.canonical_satellite(p)?.contains(&g.quotient(&c)?.group);
            Ok(report.equivalence(lhs, rhs, || {
                format!("E in the F-hypercentre: {lhs}; G/C_G(E) in F({p}): {rhs}")
            }))
        }
        LemmaId::L2_9 => {
            let (a, b) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
            let x = inst.element;
            if x as usize >= g.order() {
                return Err(Error::InvalidParams(format!("element {x} out of range")));
            }
            let lhs = factorizes(g, a, b);
            let rhs = factorizes(g, a, &g.conjugate_subgroup(b, x));
            Ok(report.implication(lhs, rhs, || format!("G = AB but G != AB^x for x = {x}")))
        }
        LemmaId::L2_10 => {
            if !fl.length_bound.is_some_and(|b| b <= 1) {
                return Ok(report.note("F is not known to consist of nilpotent groups").not_applicable());
            }
            let s = sigma_closure_check(l, f, 3);
            let lhs = s.witness.is_some();
            Ok(report.implication(lhs, s.group_in_f, || {
                format!("subgroups {:?} in F with pairwise coprime indices, G not in F", s.witness)
            }))
        }
        LemmaId::L2_13 => lemma_2_13(an, inst, report),
        LemmaId::L2_14 => {
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            if !fl.contains_nilpotent {
                return Ok(report.note("F is not known to contain N").not_applicable());
            }
            let e = inst.sub(l, 0)?;
            if !g.is_normal(e) {
                return Ok(report.note("E is not normal").not_applicable());
            }
            let phi = l.frattini();
            let emb = g.subgroup_as_group(e);
            let top = emb.group.quotient(&emb.restrict(&e.intersection(&phi)))?;
            let lhs = f.contains(&top.group);
            let rhs = f.contains_subgroup(g, e);
            Ok(report.implication(lhs, rhs, || "E/(E meet Phi(G)) is in F but E is not".into()))
        }
        LemmaId::L2_15 => {
            if !fl.saturated() {
                return Ok(not_saturated(report));
            }
            if !g.is_nilpotent_subgroup(&f.residual(g)) {
                return Ok(report.note("the F-residual is not nilpotent").not_applicable());
            }
            let (h, m) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
            let fit = fitting(g);
            let lhs = f.contains_subgroup(g, h)
                && h.is_subgroup_of(m)
                && g.join(h, &fit).order() == g.order()
                && an.subnormality(f).is_f_subnormal_in(l.idx(h), l.idx(m));
            let rhs = f.contains_subgroup(g, m);
            Ok(report.implication(lhs, rhs, || "H in F, HF(G) = G, H F-subnormal in M, but M not in F".into()))
        }
        LemmaId::P3_1 => {
            let triple = coprime_triple(an, inst.variant)?;
            let lhs = triple.is_some();
            let mut report = report;
            if let Some(t) = &triple {
                report = report.note(format!("triple of orders {}", an.orders(t)));
            }
            Ok(report.implication(lhs, an.is_soluble(), || {
                format!("qualifying triple {} but G is not soluble", an.orders(triple.as_deref().unwrap_or(&[])))
            }))
        }
        LemmaId::P3_4 => {
            let r = inst.r;
            if fl.level < r || !fl.contains_nilpotent || !fl.length_bound.is_some_and(|b| b <= r + 1) {
                return Ok(report.note(format!("M does not satisfy the bounds for r = {r}")).not_applicable());
            }
            let target = if inst.variant == 0 {
                f.clone()
            } else {
                Formation::p_groups(inst.prime).product(f)
            };
            let s = sigma_closure_check(l, &target, r as usize + 3);
            let lhs = s.witness.is_some();
            Ok(report.implication(lhs, s.group_in_f, || {
                format!("subgroups {:?} in {target} with pairwise coprime indices, G not in it", s.witness)
            }))
        }
    }
}

/// Maximal subgroups `M` with `G/M_G` outside `F`.
fn f_abnormal_maximals(l: &SubgroupLattice, f: &Formation) -> Result<Vec<usize>> {
    let mut out = Vec::new();
    for &m in l.lower_covers(l.top()) {
        if !is_f_normal_maximal(l, m, f)? {
            out.push(m);
        }
    }
    Ok(out)
}

fn exponent_of(g: &FiniteGroup, h: &Subgroup) -> u64 {
    h.elements().fold(1, |e, x| crate::numbers::lcm(e, g.element_order(x) as u64))
}

fn lemma_2_4(an: &Analyzer<'_>, f: &Formation, report: TheoremReport) -> Result<TheoremReport> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let a = f.residual(g);
    let abnormal = f_abnormal_maximals(l, f)?;
    let lhs = !a.is_trivial() && abnormal.iter().all(|&m| f.contains_subgroup(g, l.get(m)));
    if !lhs {
        return Ok(report.vacuous());
    }
    let mut failed = Vec::new();
    let p = prime_power_base(a.order() as u64);
    if p.is_none() {
        failed.push("(1) residual is not a p-group");
    }
    let p = p.unwrap_or(0);
    let ai = l.idx(&a);
    let phi_a = l.frattini_of(ai);
    let chief = minimal_normal_over(g, &phi_a).contains(&a);
    let eccentric = chief
        && !crate::formation::is_f_central(
            g,
            &ChiefFactor {
                order: a.order() / phi_a.order(),
                prime: Some(p),
                lower: phi_a.clone(),
                upper: a.clone(),
            },
            f,
        )?;
    if !eccentric {
        failed.push("(2) top factor of the residual is not an F-eccentric chief factor");
    }
    let exp = exponent_of(g, &a);
    if g.is_abelian_subgroup(&a) {
        if exp != p {
            failed.push("(4) abelian residual is not elementary");
        }
    } else {
        // the centre, derived subgroup and Frattini subgroup of the residual
        let center = a.intersection(&g.centralizer_of(&a));
        let derived = g.derived_of(&a);
        if !(center == derived && derived == phi_a && exponent_of(g, &center) <= p) {
            failed.push("(3) centre, derived and Frattini subgroups of the residual differ or have exponent above p");
        }
    }
    if (p > 2 && exp != p) || (p == 2 && exp > 4) {
        failed.push("(5) exponent bound");
    }
    if let Some(&first) = abnormal.first() {
        let m0 = l.get(first);
        let class: Vec<Subgroup> = g.elements().map(|x| g.conjugate_subgroup(m0, x)).collect();
        if !abnormal.iter().all(|&m| class.contains(l.get(m))) {
            failed.push("(6) F-abnormal maximal subgroups are not all conjugate");
        }
    }
    let report = report.note("part (3) is read for the residual itself");
    Ok(report.implication(true, failed.is_empty(), || failed.join("; ")))
}

fn lemma_2_5(an: &Analyzer<'_>, f: &Formation, report: TheoremReport) -> Result<TheoremReport> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let n = g.order() as u64;
    let critical = is_f_critical(l, f);
    let normal_sylows: Vec<(u64, Subgroup)> = g
        .primes()
        .into_iter()
        .filter_map(|p| {
            let s = l.sylow_subgroups(p);
            (s.len() == 1).then(|| (p, l.get(s[0]).clone()))
        })
        .collect();
    let lhs = critical && !normal_sylows.is_empty();
    if !lhs {
        return Ok(report.vacuous());
    }
    let residual = f.residual(g);
    let phi = l.frattini();
    let fit = fitting(g);
    let mut failed = Vec::new();
    for (p, gp) in &normal_sylows {
        if *gp != residual {
            failed.push(format!("(1) Sylow {p}-subgroup is not the residual"));
        }
        if g.join(gp, &phi) != fit {
            failed.push(format!("(2) F(G) != G_{p} Phi(G)"));
        }
        let phi_p = l.frattini_of(l.idx(gp));
        let c = g.factor_centralizer(gp, &phi_p);
        let index = (n / p_part(n, *p)) as usize;
        let some_complement = l
            .subgroups()
            .iter()
            .filter(|s| s.order() == index)
            .any(|s| s.intersection(&c) == s.intersection(&phi));
        if !some_complement {
            failed.push(format!("(3) no complement of the Sylow {p}-subgroup meets the centralizer in Phi(G)"));
        }
    }
    Ok(report.implication(true, failed.is_empty(), || failed.join("; ")))
}

fn lemma_2_6(an: &Analyzer<'_>, report: TheoremReport) -> Result<TheoremReport> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let u = Formation::supersoluble();
    let report = TheoremReport {
        params: "F=U".into(),
        ..report
    };
    if !is_f_critical(l, &u) {
        return Ok(report.vacuous());
    }
    let mut failed = Vec::new();
    if !an.is_soluble() || g.primes().len() > 3 {
        failed.push("(1) not soluble with at most three prime divisors".to_string());
    }
    if !is_schmidt(l) && !dispersiveness(g).ore {
        failed.push("(2) neither Schmidt nor Ore dispersive".to_string());
    }
    let residual = u.residual(g);
    let normal_sylow_primes: Vec<u64> = g.primes().into_iter().filter(|&p| l.sylow_subgroups(p).len() == 1).collect();
    let residual_is_it = normal_sylow_primes.len() == 1
        && l.sylow_subgroups(normal_sylow_primes[0]).first().map(|&i| l.get(i)) == Some(&residual);
    if !residual_is_it {
        failed.push("(3) residual is not the unique normal Sylow subgroup".to_string());
    }
    let phi = l.frattini();
    let index = g.order() / residual.order();
    for s in l.subgroups().iter().filter(|s| s.order() == index && s.intersection(&residual).is_trivial()) {
        let emb = g.subgroup_as_group(s);
        let q = emb.group.quotient(&emb.restrict(&s.intersection(&phi)))?;
        let qg = Arc::new(q.group);
        let primary_cyclic =
            qg.order() == 1 || (prime_power_base(qg.order() as u64).is_some() && qg.exponent() == qg.order() as u64);
        if !primary_cyclic && !is_miller_moreno(&*an.cache().get(&qg)?) {
            failed.push(format!("(4) complement of order {} modulo Phi is neither primary cyclic nor Miller-Moreno", s.order()));
        }
    }
    Ok(report.implication(true, failed.is_empty(), || failed.join("; ")))
}

fn lemma_2_13(an: &Analyzer<'_>, inst: &LemmaInstance, report: TheoremReport) -> Result<TheoremReport> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let phi_order = &inst.ordering;
    let (a, b) = (inst.sub(l, 0)?, inst.sub(l, 1)?);
    if !g.is_normal(a) || !g.is_normal(b) {
        return Ok(report.note("subgroups are not normal").not_applicable());
    }
    let disp = |n: &Subgroup| -> Result<bool> { Ok(is_phi_dispersive(&g.quotient(n)?.group, phi_order)) };
    let whole = is_phi_dispersive(g, phi_order);
    let frattini_top = disp(&l.frattini())?;
    let (qa, qb) = (disp(a)?, disp(b)?);
    let meet = disp(&a.intersection(b))?;
    let mut failed = Vec::new();
    if whole && !qa {
        failed.push("quotient of a dispersive group is not dispersive");
    }
    if frattini_top && !whole {
        failed.push("G/Phi(G) dispersive but G not");
    }
    if qa && qb && !meet {
        failed.push("G/N1 and G/N2 dispersive but G/(N1 meet N2) not");
    }
    let lhs = whole || frattini_top || (qa && qb);
    Ok(report.implication(lhs, failed.is_empty(), || failed.join("; ")))
}

/// A triple of proper soluble subgroups with `G = A_i A_j` for all pairs and
/// pairwise coprime indices of the variant's comparison subgroups. Variant 3
/// drops the factorization requirement, which coprime indices imply anyway.
fn coprime_triple(an: &Analyzer<'_>, variant: u8) -> Result<Option<Vec<usize>>> {
    let l = an.lattice();
    let g = an.group().as_ref();
    if !(1..=3).contains(&variant) {
        return Err(Error::InvalidParams(format!("variant {variant} is not 1, 2 or 3")));
    }
    let n = g.order() as u64;
    let cands: Vec<(usize, u64)> = (0..l.top())
        .filter(|&i| is_subgroup_soluble(g, l.get(i)))
        .map(|i| {
            let a = l.get(i);
            let d = match variant {
                1 => g.normalizer(&g.derived_of(a)).order(),
                2 => g.normalizer(a).order(),
                _ => a.order(),
            };
            (i, n / d as u64)
        })
        .collect();
    let ok = |x: usize, y: usize| {
        gcd(cands[x].1, cands[y].1) == 1 && (variant == 3 || factorizes(g, l.get(cands[x].0), l.get(cands[y].0)))
    };
    for x in 0..cands.len() {
        for y in x + 1..cands.len() {
            if !ok(x, y) {
                continue;
            }
            for z in y + 1..cands.len() {
                if ok(x, z) && ok(y, z) {
                    return Ok(Some(vec![cands[x].0, cands[y].0, cands[z].0]));
                }
            }
        }
    }
    Ok(None)
}
