use std::collections::BTreeSet;
use std::fmt;

use serde::Serialize;

use crate::error::Result;
use crate::formation::{is_f_central, Formation};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{minimal_normal_over, minimal_normal_subgroups, o_pi, sylow, ChiefFactor};
use crate::numbers::{gcd, p_part, prime_factors};
use crate::structure::{dispersiveness, induced_action};

use super::Analyzer;

/// At most this many Sylow subgroups of `A` are compared per `(H, p)`.
const CONJUGATE_SAMPLE: usize = 16;

#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum TypeKind {
    TypeI,
    #[serde(rename = "type_ii")]
    TypeII,
    NotOfEitherType,
}

impl fmt::Display for TypeKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            TypeKind::TypeI => "type I",
            TypeKind::TypeII => "type II",
            TypeKind::NotOfEitherType => "of neither type",
        })
    }
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
#[serde(tag = "shape", rename_all = "snake_case")]
pub enum AShape {
    /// `A` is the direct product of its Sylow subgroups, each minimal normal in `G`.
    ProductOfMinimalNormalSylows { primes: Vec<u64> },
    SpecialSylowP {
        prime: u64,
        exponent_ok: bool,
        derived_eq_frattini_eq_center: bool,
        top_factor_eccentric: bool,
    },
}

impl AShape {
    fn holds(&self) -> bool {
        match self {
            AShape::ProductOfMinimalNormalSylows { .. } => true,
            AShape::SpecialSylowP {
                exponent_ok,
                derived_eq_frattini_eq_center,
                top_factor_eccentric,
                ..
            } => *exponent_ok && *derived_eq_frattini_eq_center && *top_factor_eccentric,
        }
    }
}

/// Conditions on one `n`-maximal subgroup `H` and one prime `p` of `|A|`.
#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Ii2Check {
    /// Lattice index of `H`.
    pub subgroup: usize,
    pub subgroup_order: usize,
    pub prime: u64,
    pub in_f: bool,
    /// `H/C_H(P)` lies in `F(p)` for the first Sylow `p`-subgroup `P` of `A` normalized by `H`.
    pub action_in_satellite: bool,
    /// Sylow `p`-subgroups of `A` normalized by `H` that were compared.
    pub conjugates_checked: usize,
    /// Some compared conjugate gave a different verdict.
    pub discrepancy: bool,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct TypeIIChecks {
    pub a_order: usize,
    pub a_hall: bool,
    /// Order of a complement of `A`, when one exists.
    pub b_order: Option<usize>,
    pub ore_dispersive: bool,
    pub a_shape: Option<AShape>,
    pub ii1: bool,
    pub ii2_checks: Vec<Ii2Check>,
    pub ii2: bool,
}

impl TypeIIChecks {
    pub fn all_hold(&self) -> bool {
        self.a_hall && self.b_order.is_some() && self.ore_dispersive && self.ii1 && self.ii2
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationOutcome {
    pub group: String,
    pub formation: String,
    pub n: usize,
    pub kind: TypeKind,
    /// Absent exactly for type I.
    pub details: Option<TypeIIChecks>,
    #[serde(skip)]
    pub a: Option<Subgroup>,
    #[serde(skip)]
    pub b: Option<Subgroup>,
}

impl ClassificationOutcome {
    pub fn summary(&self) -> String {
        match &self.details {
            None => self.kind.to_string(),
            Some(d) => {
                let mut failed = Vec::new();
                if !d.a_hall {
                    failed.push("residual not Hall");
                }
                if d.b_order.is_none() {
                    failed.push("no complement");
                }
                if !d.ore_dispersive {
                    failed.push("not Ore dispersive");
                }
                if !d.ii1 {
                    failed.push("residual shape");
                }
                if !d.ii2 {
                    failed.push("n-maximal conditions");
                }
                if failed.is_empty() {
                    format!("{} with |A| = {}", self.kind, d.a_order)
                } else {
                    format!("{} ({})", self.kind, failed.join(", "))
                }
            }
        }
    }
}

/// Sorts `G` into type I (`G` in `F`), type II, or neither. Every type II
/// condition is evaluated even after one fails, so the details show them all.
pub fn classify_type(an: &Analyzer<'_>, n: usize, f: &Formation) -> Result<ClassificationOutcome> {
    let l = an.lattice();
    let g = an.group().as_ref();
    let mut out = ClassificationOutcome {
        group: g.name().to_string(),
        formation: f.name(),
        n,
        kind: TypeKind::TypeI,
        details: None,
        a: None,
        b: None,
    };
    if f.contains(g) {
        return Ok(out);
    }
    f.canonical_satellite(2)?;
    let a = f.residual(g);
    let a_order = a.order();
    let index = g.order() / a_order;
    let a_hall = gcd(a_order as u64, index as u64) == 1;
    let b = if a_hall {
        l.subgroups().iter().find(|s| s.order() == index).cloned()
    } else {
        None
    };
    let ore_dispersive = dispersiveness(g).ore;
    let a_shape = residual_shape(g, &a, f)?;
    let ii1 = a_shape.as_ref().is_some_and(AShape::holds);

    let mut ii2_checks = Vec::new();
    let primes = prime_factors(a_order as u64);
    for h in l.n_maximal_indices(l.top(), n) {
        let hs = l.get(h);
        let in_f = f.contains_subgroup(g, hs);
        for &p in &primes {
            let (action_in_satellite, conjugates_checked, discrepancy) = action_verdict(g, &a, hs, p, f)?;
            ii2_checks.push(Ii2Check {
                subgroup: h,
                subgroup_order: hs.order(),
                prime: p,
                in_f,
                action_in_satellite,
                conjugates_checked,
                discrepancy,
            });
        }
    }
    let ii2 = ii2_checks.iter().all(|c| c.in_f && c.action_in_satellite);
    let details = TypeIIChecks {
        a_order,
        a_hall,
        b_order: b.as_ref().map(Subgroup::order),
        ore_dispersive,
        a_shape,
        ii1,
        ii2_checks,
        ii2,
    };
    out.kind = if details.all_hold() {
        TypeKind::TypeII
    } else {
        TypeKind::NotOfEitherType
    };
    out.details = Some(details);
    out.a = Some(a);
    out.b = b;
    Ok(out)
}

/// Which of the two admissible shapes `A` has, if either.
fn residual_shape(g: &FiniteGroup, a: &Subgroup, f: &Formation) -> Result<Option<AShape>> {
    let n = g.order() as u64;
    let primes = prime_factors(a.order() as u64);
    if g.is_nilpotent_subgroup(a) {
        let minimal = minimal_normal_subgroups(g);
        let ok = primes.iter().all(|&p| {
            let ap = a.intersection(&o_pi(g, &[p]));
            ap.order() as u64 == p_part(n, p) && minimal.contains(&ap)
        });
        if ok {
            return Ok(Some(AShape::ProductOfMinimalNormalSylows { primes }));
        }
    }
    if primes.len() != 1 || a.order() as u64 != p_part(n, primes[0]) {
        return Ok(None);
    }
    let p = primes[0];
    let exponent_ok = a.elements().all(|x| g.element_order(x) as u64 <= p);
    let derived = g.derived_of(a);
    // Frattini subgroup of a p-group: generated by commutators and p-th powers
    let powers = a.elements().map(|x| (0..p - 1).fold(x, |acc, _| g.mul(acc, x)));
    let frattini = g.generated(derived.elements().chain(powers));
    let center = a.intersection(&g.centralizer_of(a));
    let derived_eq_frattini_eq_center = derived == frattini && frattini == center;
    let top_factor_eccentric = if minimal_normal_over(g, &frattini).contains(a) {
        let cf = ChiefFactor {
            order: a.order() / frattini.order(),
            prime: Some(p),
            lower: frattini,
            upper: a.clone(),
        };
        !is_f_central(g, &cf, f)?
    } else {
        false
    };
    Ok(Some(AShape::SpecialSylowP {
        prime: p,
        exponent_ok,
        derived_eq_frattini_eq_center,
        top_factor_eccentric,
    }))
}

/// Verdict for the first Sylow `p`-subgroup of `A` that `H` normalizes, the
/// number of such subgroups compared, and whether any verdict disagreed.
/// Sylow subgroups of `A` are reached by conjugating with elements of `A`, so
/// they all lie in `AH`.
fn action_verdict(g: &FiniteGroup, a: &Subgroup, h: &Subgroup, p: u64, f: &Formation) -> Result<(bool, usize, bool)> {
    let satellite = f.canonical_satellite(p)?;
    let p0 = a.intersection(&sylow(g, p));
    let mut seen = BTreeSet::new();
    let mut verdicts = Vec::new();
    for x in a.elements() {
        if seen.len() >= CONJUGATE_SAMPLE {
            break;
        }
        let px = g.conjugate_subgroup(&p0, x);
        if !seen.insert(px.clone()) {
            continue;
        }
        match induced_action(g, h, &px) {
            Ok(q) => verdicts.push(satellite.contains(&q.group)),
            Err(crate::Error::NotNormalized) => {}
            Err(e) => return Err(e),
        }
    }
    match verdicts.first() {
        Some(&v) => Ok((v, verdicts.len(), verdicts.iter().any(|&w| w != v))),
        None => Ok((false, 0, false)),
    }
}
