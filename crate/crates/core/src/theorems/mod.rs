//! Verifiers for the classification theorems and the supporting lemma suite,
//! plus the corpus harness that runs them in bulk.

mod classify;
mod corpus;
mod lemmas;

use std::cell::RefCell;
use std::collections::HashMap;
use std::fmt;
use std::rc::Rc;
use std::str::FromStr;
use std::sync::Arc;

use serde::{Serialize, Serializer};

use crate::dsl::LatticeCache;
use crate::error::{Error, Result};
use crate::formation::{is_f_critical, FSubnormality, Formation};
use crate::group::{FiniteGroup, QuotientGroup, Subgroup};
use crate::lattice::{minimal_normal_subgroups, SubgroupLattice};
use crate::structure::{dispersiveness, is_phi_dispersive, is_soluble, is_subnormal};

pub use classify::{classify_type, AShape, ClassificationOutcome, Ii2Check, TypeIIChecks, TypeKind};
pub use corpus::{
    default_suite, run_corpus, CellSummary, Check, CheckId, ClassificationRecord, CorpusSummary, RunConfig,
    SatelliteValidation, Skip,
};
pub use lemmas::{lemma_instances, verify_lemma, LemmaId, LemmaInstance};

/// Outcome of one theorem or lemma instance.
#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct TheoremReport {
    pub theorem_id: String,
    pub group: String,
    pub params: String,
    pub hypotheses_met: bool,
    /// `None` when the hypotheses fail.
    #[serde(serialize_with = "serialize_conclusion")]
    pub conclusion_holds: Option<bool>,
    /// Truth of the two sides of the checked implication or equivalence.
    pub lhs: Option<bool>,
    pub rhs: Option<bool>,
    pub witness: Option<String>,
    pub notes: Vec<String>,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

fn serialize_conclusion<S: Serializer>(v: &Option<bool>, s: S) -> std::result::Result<S::Ok, S::Error> {
    match v {
        Some(b) => s.serialize_bool(*b),
        None => s.serialize_str("not_applicable"),
    }
}

impl TheoremReport {
    pub fn new(theorem_id: impl Into<String>, group: &str, params: impl Into<String>) -> Self {
        TheoremReport {
            theorem_id: theorem_id.into(),
            group: group.to_string(),
            params: params.into(),
            hypotheses_met: false,
            conclusion_holds: None,
            lhs: None,
            rhs: None,
            witness: None,
            notes: Vec::new(),
            elapsed_ms: None,
        }
    }

    fn note(mut self, note: impl Into<String>) -> Self {
        self.notes.push(note.into());
        self
    }

    fn not_applicable(mut self) -> Self {
        self.hypotheses_met = false;
        self.conclusion_holds = None;
        self
    }

    /// Hypotheses met, premise false.
    fn vacuous(mut self) -> Self {
        self.hypotheses_met = true;
        self.lhs = Some(false);
        self.conclusion_holds = Some(true);
        self
    }

    /// `lhs => rhs`.
    fn implication(self, lhs: bool, rhs: bool, witness: impl FnOnce() -> String) -> Self {
        self.decide(lhs, rhs, !lhs || rhs, witness)
    }

    /// `lhs <=> rhs`.
    fn equivalence(self, lhs: bool, rhs: bool, witness: impl FnOnce() -> String) -> Self {
        self.decide(lhs, rhs, lhs == rhs, witness)
    }

    fn decide(mut self, lhs: bool, rhs: bool, holds: bool, witness: impl FnOnce() -> String) -> Self {
        self.hypotheses_met = true;
        self.lhs = Some(lhs);
        self.rhs = Some(rhs);
        self.conclusion_holds = Some(holds);
        if !holds {
            self.witness = Some(witness());
        }
        self
    }

    /// Hypotheses met and conclusion false.
    pub fn is_violation(&self) -> bool {
        self.hypotheses_met && self.conclusion_holds == Some(false)
    }

    /// Hypotheses met and the left side true, so the instance tested something.
    pub fn is_nonvacuous(&self) -> bool {
        self.hypotheses_met && self.lhs == Some(true)
    }
}

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum TheoremId {
    A,
    B,
    C,
    D,
    /// Plain subnormality of all `n`-maximal subgroups forces nilpotency.
    SubnormalNilpotent,
}

impl FromStr for TheoremId {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        Ok(match s.trim() {
            "A" | "a" => TheoremId::A,
            "B" | "b" => TheoremId::B,
            "C" | "c" => TheoremId::C,
            "D" | "d" => TheoremId::D,
            "3.7" | "C3.7" => TheoremId::SubnormalNilpotent,
            other => return Err(Error::InvalidParams(format!("unknown theorem `{other}` (expected A, B, C, D or 3.7)"))),
        })
    }
}

impl fmt::Display for TheoremId {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TheoremId::A => "A",
            TheoremId::B => "B",
            TheoremId::C => "C",
            TheoremId::D => "D",
            TheoremId::SubnormalNilpotent => "3.7",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Params {
    pub n: usize,
    pub r: u32,
    pub formation: Formation,
}

impl Params {
    pub fn new(formation: Formation, n: usize, r: u32) -> Self {
        Params { n, r, formation }
    }

    /// The parameters `id` actually reads, for report labels.
    pub fn label(&self, id: TheoremId) -> String {
        match id {
            TheoremId::A => format!("F={} n={} r={}", self.formation, self.n, self.r),
            TheoremId::B | TheoremId::D => format!("F={} n={}", self.formation, self.n),
            TheoremId::C => format!("F={}", self.formation),
            TheoremId::SubnormalNilpotent => format!("n={}", self.n),
        }
    }
}

/// One group's lattice plus per-formation memo tables. Not shared between
/// threads; the lattice and the quotient lattices come from a shared cache.
pub struct Analyzer<'a> {
    lattice: &'a SubgroupLattice,
    cache: &'a LatticeCache,
    subn: RefCell<HashMap<String, Rc<FSubnormality<'a>>>>,
    soluble: bool,
}

impl<'a> Analyzer<'a> {
    pub fn new(lattice: &'a SubgroupLattice, cache: &'a LatticeCache) -> Self {
        Analyzer {
            lattice,
            cache,
            subn: RefCell::new(HashMap::new()),
            soluble: is_soluble(lattice.group()),
        }
    }

    pub fn lattice(&self) -> &'a SubgroupLattice {
        self.lattice
    }

    pub fn group(&self) -> &'a Arc<FiniteGroup> {
        self.lattice.group()
    }

    pub fn cache(&self) -> &'a LatticeCache {
        self.cache
    }

    pub fn is_soluble(&self) -> bool {
        self.soluble
    }

    pub fn subnormality(&self, f: &Formation) -> Rc<FSubnormality<'a>> {
        self.subn
            .borrow_mut()
            .entry(f.name())
            .or_insert_with(|| Rc::new(FSubnormality::new(self.lattice, f)))
            .clone()
    }

    /// `G/N` together with its lattice.
    pub fn quotient_lattice(&self, n: &Subgroup) -> Result<(QuotientGroup, Arc<SubgroupLattice>)> {
        let q = self.group().quotient(n)?;
        let l = self.cache.get(&Arc::new(q.group.clone()))?;
        Ok((q, l))
    }

    fn orders(&self, idx: &[usize]) -> String {
        let orders: Vec<String> = idx.iter().map(|&i| self.lattice.get(i).order().to_string()).collect();
        format!("[{}]", orders.join(", "))
    }
}

fn require(flag: bool, what: &str, f: &Formation) -> Result<()> {
    if flag {
        Ok(())
    } else {
        Err(Error::InvalidParams(format!("{f} is not known to be {what}")))
    }
}

/// Between `N` and `U`, saturated and with a canonical satellite.
fn check_nilpotent_to_supersoluble(f: &Formation) -> Result<()> {
    let fl = f.flags();
    require(fl.saturated(), "saturated", f)?;
    require(fl.contains_nilpotent, "a superclass of N", f)?;
    require(fl.within_supersoluble, "contained in U", f)?;
    f.canonical_satellite(2).map(|_| ())
}

pub fn verify_theorem(id: TheoremId, an: &Analyzer<'_>, params: &Params) -> Result<TheoremReport> {
    let g = an.group();
    let l = an.lattice();
    let f = &params.formation;
    let n = params.n;
    let k = g.primes().len();
    let report = TheoremReport::new(id.to_string(), g.name(), params.label(id));
    if n == 0 && id != TheoremId::C {
        return Err(Error::InvalidParams("n must be positive".into()));
    }
    match id {
        TheoremId::A => {
            let r = params.r;
            let fl = f.flags();
            require(fl.level >= r, &format!("{r}-multiply saturated"), f)?;
            require(fl.contains_nilpotent, "a superclass of N", f)?;
            require(fl.length_bound.is_some_and(|b| b <= r + 1), &format!("contained in N^{}", r + 1), f)?;
            let mut report = report;
            if r == 0 {
                report = report.note("degenerate case r = 0: the class bounds force F = N");
            }
            if !an.is_soluble() || k < n + r as usize + 1 {
                return Ok(report.not_applicable());
            }
            let (premise, bad) = an.subnormality(f).all_n_maximal_f_subnormal(n);
            debug_assert!(!premise || bad.is_empty());
            let in_f = f.contains(g);
            Ok(report.implication(premise, in_f, || {
                format!(
                    "all {n}-maximal subgroups are F-subnormal but G is not in F (residual of order {})",
                    f.residual(g).order()
                )
            }))
        }
        TheoremId::B => {
            check_nilpotent_to_supersoluble(f)?;
            if !an.is_soluble() || k < n + 1 {
                return Ok(report.not_applicable());
            }
            let (lhs, bad) = an.subnormality(f).all_n_maximal_f_subnormal(n);
            let outcome = classify_type(an, n, f)?;
            let rhs = outcome.kind != TypeKind::NotOfEitherType;
            let report = report.note(format!("type: {}", outcome.kind));
            Ok(report.equivalence(lhs, rhs, || {
                if lhs {
                    format!("all {n}-maximal subgroups are F-subnormal but G is of neither type: {}", outcome.summary())
                } else {
                    format!("G is {} but {n}-maximal subgroups of orders {} are not F-subnormal", outcome.kind, an.orders(&bad))
                }
            }))
        }
        TheoremId::C => {
            let fl = f.flags();
            require(fl.hereditary, "hereditary", f)?;
            require(fl.saturated(), "saturated", f)?;
            let critical = is_f_critical(l, f);
            let mut report = report;
            if critical {
                let normal_sylow = g.primes().into_iter().any(|p| l.sylow_subgroups(p).len() == 1);
                if !an.is_soluble() || !normal_sylow {
                    return Ok(report
                        .note("G is F-critical but not soluble with a normal Sylow subgroup")
                        .not_applicable());
                }
                report = report.note("critical-group condition checked on G");
            } else if fl.within_supersoluble {
                report = report.note("critical-group condition holds for every group: F is contained in U");
            } else {
                report = report.note("critical-group condition assumed");
            }
            let (lhs, bad) = an.subnormality(f).all_n_maximal_f_subnormal(2);
            let in_f = f.contains(g);
            let residual = f.residual(g);
            let minimal = minimal_normal_subgroups(g).contains(&residual);
            let rhs = in_f || (critical && minimal);
            Ok(report.equivalence(lhs, rhs, || {
                if lhs {
                    format!(
                        "all 2-maximal subgroups are F-subnormal, G is not in F, critical = {critical}, residual of order {} minimal normal = {minimal}",
                        residual.order()
                    )
                } else {
                    format!("2-maximal subgroups of orders {} are not F-subnormal", an.orders(&bad))
                }
            }))
        }
        TheoremId::D => {
            check_nilpotent_to_supersoluble(f)?;
            if !an.is_soluble() || k < n {
                return Ok(report.not_applicable());
            }
            let (premise, _) = an.subnormality(f).all_n_maximal_f_subnormal(n);
            let d = dispersiveness(g);
            let rhs = d.witness.as_deref().is_some_and(|w| is_phi_dispersive(g, w));
            let mut report = report;
            if let Some(w) = &d.witness {
                report = report.note(format!("ordering {w:?}"));
            }
            Ok(report.implication(premise, rhs, || {
                format!("all {n}-maximal subgroups are F-subnormal but no dispersive ordering exists")
            }))
        }
        TheoremId::SubnormalNilpotent => {
            if !an.is_soluble() || k < n + 1 {
                return Ok(report.not_applicable());
            }
            let bad: Vec<usize> = l
                .n_maximal_indices(l.top(), n)
                .into_iter()
                .filter(|&h| !is_subnormal(g, l.get(h)))
                .collect();
            let nilpotent = crate::structure::is_nilpotent(g);
            Ok(report.implication(bad.is_empty(), nilpotent, || {
                format!("all {n}-maximal subgroups are subnormal but G is not nilpotent")
            }))
        }
    }
}

#[cfg(test)]
mod tests;
