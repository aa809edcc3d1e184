//! Formations as executable classes of groups.
//!
//! A formation is an expression over a few primitive classes combined by the
//! class product `M*H = {G : G^H in M}` and by intersection. Membership and
//! residuals are computed structurally; metadata flags are propagated
//! conservatively so that a flag is only set when it is known to hold.

mod central;
mod sigma;
mod subnormal;

pub use central::{f_hypercentre, is_f_central, local_membership};
pub use sigma::{sigma_closure_check, SigmaReport};
pub use subnormal::{is_f_critical, is_f_critical_literal, is_f_normal_maximal, FSubnormality};

use std::fmt;

use crate::error::{Error, Result};
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::normal_subgroups;
use crate::numbers::{p_part, prime_power_base};
use crate::structure::{is_nilpotent, is_soluble, is_supersoluble, nilpotent_length};

/// Stored multiply-saturated level meaning "n-multiply saturated for every n".
pub const UNBOUNDED: u32 = u32::MAX;

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum Prim {
    /// Nilpotent groups.
    N,
    /// Supersoluble groups.
    U,
    /// Soluble groups.
    S,
    /// Soluble groups of nilpotent length at most `r`.
    NilpotentLength(u32),
    /// `p`-groups.
    Gp(u64),
    /// Abelian groups of exponent dividing `m`.
    Abelian(u64),
}

#[derive(Clone, Debug, PartialEq, Eq, Hash)]
pub enum FormationExpr {
    Prim(Prim),
    Product(Box<FormationExpr>, Box<FormationExpr>),
    Intersect(Box<FormationExpr>, Box<FormationExpr>),
}

impl FormationExpr {
    pub fn product(m: FormationExpr, h: FormationExpr) -> Self {
        FormationExpr::Product(Box::new(m), Box::new(h))
    }

    pub fn intersect(a: FormationExpr, b: FormationExpr) -> Self {
        FormationExpr::Intersect(Box::new(a), Box::new(b))
    }
}

/// Metadata a formation is known to satisfy. `false` means "not known", not "false".
#[derive(Clone, Copy, Debug, PartialEq, Eq)]
pub struct Flags {
    pub hereditary: bool,
    /// Largest `n` for which the formation is known to be `n`-multiply
    /// saturated; level 1 is plain saturation.
    pub level: u32,
    /// Known `k` with `F` contained in `N^k`.
    pub length_bound: Option<u32>,
    pub contains_nilpotent: bool,
    pub within_supersoluble: bool,
}

impl Flags {
    pub fn saturated(&self) -> bool {
        self.level >= 1
    }
}

fn prim_flags(p: &Prim) -> Flags {
    let all = Flags {
        hereditary: true,
        level: UNBOUNDED,
        length_bound: Some(1),
        contains_nilpotent: true,
        within_supersoluble: true,
    };
    match *p {
        Prim::N => all,
        Prim::U => Flags {
            level: 1,
            length_bound: Some(2),
            ..all
        },
        Prim::S => Flags {
            length_bound: None,
            within_supersoluble: false,
            ..all
        },
        Prim::NilpotentLength(r) => Flags {
            length_bound: Some(r),
            within_supersoluble: r <= 1,
            ..all
        },
        Prim::Gp(_) => Flags {
            contains_nilpotent: false,
            ..all
        },
        Prim::Abelian(m) => Flags {
            // only the trivial class is saturated: C_4/Phi(C_4) has exponent 2
            level: if m == 1 { UNBOUNDED } else { 0 },
            length_bound: Some(if m == 1 { 0 } else { 1 }),
            contains_nilpotent: false,
            ..all
        },
    }
}

fn flags_of(e: &FormationExpr) -> Flags {
    match e {
        FormationExpr::Prim(p) => prim_flags(p),
        FormationExpr::Product(m, h) => {
            let (fm, fh) = (flags_of(m), flags_of(h));
            let mut level = fm.level.min(fh.level);
            if fm.saturated() {
                // the product with a saturated left factor is saturated
                level = level.max(1);
            }
            let length_bound = match (fm.length_bound, fh.length_bound) {
                (Some(a), Some(b)) => Some(a + b),
                _ => None,
            };
            let satellite_shape = matches!(
                (m.as_ref(), h.as_ref()),
                (FormationExpr::Prim(Prim::Gp(_)), FormationExpr::Prim(Prim::Abelian(_) | Prim::N | Prim::NilpotentLength(_)))
            );
            // r-multiply saturated formations inside N^(r+1) are hereditary
            let by_length = matches!(length_bound, Some(b) if level != UNBOUNDED && b <= level.saturating_add(1))
                || (level == UNBOUNDED && length_bound.is_some());
            let within_supersoluble = match (m.as_ref(), h.as_ref()) {
                (FormationExpr::Prim(Prim::Gp(p)), FormationExpr::Prim(Prim::Abelian(k))) => (p - 1) % k == 0,
                _ => false,
            } || (fm.within_supersoluble && fh.length_bound == Some(0));
            Flags {
                hereditary: satellite_shape || by_length,
                level,
                length_bound,
                contains_nilpotent: fm.contains_nilpotent || fh.contains_nilpotent,
                within_supersoluble,
            }
        }
        FormationExpr::Intersect(a, b) => {
            let (fa, fb) = (flags_of(a), flags_of(b));
            let length_bound = match (fa.length_bound, fb.length_bound) {
                (Some(x), Some(y)) => Some(x.min(y)),
                (x, None) | (None, x) => x,
            };
            Flags {
                hereditary: fa.hereditary && fb.hereditary,
                level: fa.level.min(fb.level),
                length_bound,
                contains_nilpotent: fa.contains_nilpotent && fb.contains_nilpotent,
                within_supersoluble: fa.within_supersoluble || fb.within_supersoluble,
            }
        }
    }
}

#[derive(Clone, Debug, PartialEq, Eq)]
pub struct Formation {
    expr: FormationExpr,
    flags: Flags,
}

impl Formation {
    pub fn new(expr: FormationExpr) -> Self {
        let flags = flags_of(&expr);
        Formation { expr, flags }
    }

    pub fn prim(p: Prim) -> Self {
        Formation::new(FormationExpr::Prim(p))
    }

    pub fn nilpotent() -> Self {
        Formation::prim(Prim::N)
    }

    pub fn supersoluble() -> Self {
        Formation::prim(Prim::U)
    }

    pub fn soluble() -> Self {
        Formation::prim(Prim::S)
    }

    pub fn nilpotent_length(r: u32) -> Self {
        Formation::prim(Prim::NilpotentLength(r))
    }

    pub fn p_groups(p: u64) -> Self {
        Formation::prim(Prim::Gp(p))
    }

    pub fn abelian_exponent(m: u64) -> Self {
        Formation::prim(Prim::Abelian(m))
    }

    pub fn product(&self, h: &Formation) -> Formation {
        Formation::new(FormationExpr::product(self.expr.clone(), h.expr.clone()))
    }

    pub fn intersection(&self, other: &Formation) -> Formation {
        Formation::new(FormationExpr::intersect(self.expr.clone(), other.expr.clone()))
    }

    pub fn expr(&self) -> &FormationExpr {
        &self.expr
    }

    pub fn flags(&self) -> Flags {
        self.flags
    }

    pub fn name(&self) -> String {
        self.to_string()
    }

    pub fn is_hereditary(&self) -> bool {
        self.flags.hereditary
    }

    pub fn is_saturated(&self) -> bool {
        self.flags.saturated()
    }

    pub fn contains(&self, g: &FiniteGroup) -> bool {
        member(&self.expr, g)
    }

    /// Membership of a subgroup, regarded as a group in its own right.
    pub fn contains_subgroup(&self, g: &FiniteGroup, h: &Subgroup) -> bool {
        if h.order() == g.order() {
            return self.contains(g);
        }
        if h.is_trivial() {
            return true;
        }
        self.contains(&g.subgroup_as_group(h).group)
    }

    /// `G^F`, the smallest normal subgroup with quotient in `F`.
    pub fn residual(&self, g: &FiniteGroup) -> Subgroup {
        residual(&self.expr, g)
    }

    /// The local satellite `F(p)` with `F = LF(F)` and `F(p) = G_p F(p)`, for
    /// the classes where it is known in closed form.
    pub fn canonical_satellite(&self, p: u64) -> Result<Formation> {
        let gp = FormationExpr::Prim(Prim::Gp(p));
        let e = match &self.expr {
            FormationExpr::Prim(Prim::N) | FormationExpr::Prim(Prim::NilpotentLength(1)) => gp,
            FormationExpr::Prim(Prim::U) => FormationExpr::product(gp, FormationExpr::Prim(Prim::Abelian(p - 1))),
            FormationExpr::Prim(Prim::NilpotentLength(r)) if *r >= 2 => {
                let inner = if *r == 2 { Prim::N } else { Prim::NilpotentLength(r - 1) };
                FormationExpr::product(gp, FormationExpr::Prim(inner))
            }
            FormationExpr::Prim(Prim::S) => FormationExpr::Prim(Prim::S),
            _ => return Err(Error::NoSatellite(self.name())),
        };
        Ok(Formation::new(e))
    }

    pub fn has_satellite(&self) -> bool {
        self.canonical_satellite(2).is_ok()
    }
}

impl fmt::Display for Formation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        crate::dsl::formation::write_expr(f, &self.expr)
    }
}

fn member(e: &FormationExpr, g: &FiniteGroup) -> bool {
    if g.order() == 1 {
        return true;
    }
    match e {
        FormationExpr::Prim(p) => match *p {
            Prim::N => is_nilpotent(g),
            Prim::U => is_supersoluble(g),
            Prim::S => is_soluble(g),
            Prim::NilpotentLength(r) => nilpotent_length(g).is_some_and(|l| l <= r as usize),
            Prim::Gp(p) => p_part(g.order() as u64, p) == g.order() as u64,
            Prim::Abelian(m) => g.is_abelian() && m % g.exponent() == 0,
        },
        FormationExpr::Product(m, h) => {
            let r = residual(h, g);
            r.is_trivial() || member(m, &g.subgroup_as_group(&r).group)
        }
        FormationExpr::Intersect(a, b) => member(a, g) && member(b, g),
    }
}

fn residual(e: &FormationExpr, g: &FiniteGroup) -> Subgroup {
    match e {
        FormationExpr::Prim(p) => match *p {
            Prim::N => lower_central_limit(g, &g.whole()),
            Prim::S => derived_limit(g, &g.whole()),
            Prim::NilpotentLength(r) => {
                let mut k = g.whole();
                for _ in 0..r {
                    k = lower_central_limit(g, &k);
                }
                k
            }
            Prim::Gp(p) => g.generated(g.elements().filter(|&x| !(g.element_order(x) as u64).is_multiple_of(p))),
            Prim::Abelian(m) => {
                let d = g.commutator_subgroup();
                let powers: Vec<_> = g.elements().map(|x| power(g, x, m)).collect();
                let mut k = d;
                for x in powers {
                    k = g.extend(&k, x);
                }
                k
            }
            Prim::U => generic_residual_expr(e, g),
        },
        FormationExpr::Product(m, h) => {
            let r = residual(h, g);
            if r.is_trivial() {
                return r;
            }
            let emb = g.subgroup_as_group(&r);
            let inner = residual(m, &emb.group);
            emb.lift_subgroup(g, &inner)
        }
        FormationExpr::Intersect(a, b) => g.join(&residual(a, g), &residual(b, g)),
    }
}

/// Residual by definition: the residual is the unique smallest normal
/// subgroup with quotient in `F`, so the first such in increasing order is it.
fn generic_residual_expr(e: &FormationExpr, g: &FiniteGroup) -> Subgroup {
    for n in normal_subgroups(g) {
        let q = g.quotient(&n).expect("normal");
        if member(e, &q.group) {
            return n;
        }
    }
    unreachable!("G/G is trivial and lies in every formation")
}

/// Residual computed only from membership, ignoring any fast path.
pub fn generic_residual(f: &Formation, g: &FiniteGroup) -> Subgroup {
    generic_residual_expr(&f.expr, g)
}

fn power(g: &FiniteGroup, x: u32, m: u64) -> u32 {
    let k = m % g.element_order(x) as u64;
    (0..k).fold(0, |acc, _| g.mul(acc, x))
}

/// Last term of the lower central series of the subgroup `k`.
fn lower_central_limit(g: &FiniteGroup, k: &Subgroup) -> Subgroup {
    let gens = g.small_generating_set(k);
    let mut cur = k.clone();
    loop {
        let cg = g.small_generating_set(&cur);
        let comms = cg.iter().flat_map(|&a| gens.iter().map(move |&b| (a, b))).map(|(a, b)| g.commutator(a, b));
        let next = g.normal_closure_in(k, &g.generated(comms));
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

fn derived_limit(g: &FiniteGroup, k: &Subgroup) -> Subgroup {
    let mut cur = k.clone();
    loop {
        let next = g.derived_of(&cur);
        if next == cur {
            return cur;
        }
        cur = next;
    }
}

/// The prime of a chief factor's order, or every prime dividing it.
pub(crate) fn factor_primes(order: usize) -> Vec<u64> {
    match prime_power_base(order as u64) {
        Some(p) => vec![p],
        None => crate::numbers::prime_factors(order as u64),
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::perm::Permutation;

    fn group(degree: usize, gens: &[&[&[usize]]]) -> FiniteGroup {
        let gens: Vec<Permutation> = gens
            .iter()
            .map(|c| {
                let cs: Vec<Vec<usize>> = c.iter().map(|cy| cy.iter().map(|p| p - 1).collect()).collect();
                Permutation::from_cycles(degree, &cs).unwrap()
            })
            .collect();
        FiniteGroup::from_generators(&gens, "g", 5000).unwrap()
    }

    fn s3() -> FiniteGroup {
        group(3, &[&[&[1, 2]], &[&[1, 2, 3]]])
    }

    fn s4() -> FiniteGroup {
        group(4, &[&[&[1, 2]], &[&[1, 2, 3, 4]]])
    }

    fn sl23() -> FiniteGroup {
        group(8, &[&[&[1, 4, 7], &[2, 8, 5]], &[&[1, 6, 2, 3], &[4, 7, 8, 5]]])
    }

    #[test]
    fn memberships() {
        let u = Formation::supersoluble();
        assert!(u.contains(&s3()));
        assert!(!u.contains(&s4()));
        let d8 = group(4, &[&[&[1, 2, 3, 4]], &[&[1, 3]]]);
        assert!(Formation::nilpotent().contains(&d8));
        let nu = Formation::nilpotent().intersection(&u);
        assert!(nu.contains(&d8) && !nu.contains(&s3()));
        assert!(Formation::nilpotent_length(3).contains(&s4()));
        assert!(!Formation::nilpotent_length(2).contains(&s4()));
    }

    #[test]
    fn residuals() {
        assert_eq!(Formation::nilpotent().residual(&s3()).order(), 3);
        assert_eq!(Formation::supersoluble().residual(&s4()).order(), 4);
        assert!(Formation::supersoluble().residual(&s3()).is_trivial());
        assert_eq!(Formation::abelian_exponent(2).residual(&s3()).order(), 3);
        assert_eq!(Formation::p_groups(2).residual(&s4()).order(), 12);
        assert_eq!(Formation::supersoluble().residual(&sl23()).order(), 8);
    }

    #[test]
    fn products() {
        let nu = Formation::nilpotent().product(&Formation::supersoluble());
        assert!(nu.contains(&sl23()));
        let na2 = Formation::nilpotent().product(&Formation::abelian_exponent(2));
        assert!(na2.contains(&s3()));
    }

    #[test]
    fn fast_residuals_match_generic() {
        let fs = [
            Formation::nilpotent(),
            Formation::soluble(),
            Formation::nilpotent_length(2),
            Formation::p_groups(2),
            Formation::p_groups(3),
            Formation::abelian_exponent(2),
            Formation::abelian_exponent(6),
            Formation::p_groups(3).product(&Formation::abelian_exponent(2)),
            Formation::nilpotent().intersection(&Formation::abelian_exponent(4)),
        ];
        for g in [s3(), s4(), sl23(), group(4, &[&[&[1, 2, 3, 4]]])] {
            for f in &fs {
                assert_eq!(f.residual(&g), generic_residual(f, &g), "{f} on order {}", g.order());
            }
        }
    }

    #[test]
    fn satellites() {
        let u = Formation::supersoluble();
        assert!(u.canonical_satellite(3).unwrap().contains(&s3()));
        assert!(!u.canonical_satellite(2).unwrap().contains(&s3()));
        let c2 = group(2, &[&[&[1, 2]]]);
        assert!(Formation::nilpotent().canonical_satellite(2).unwrap().contains(&c2));
        assert!(matches!(u.product(&u).canonical_satellite(2), Err(Error::NoSatellite(_))));
        assert_eq!(
            Formation::nilpotent_length(2).canonical_satellite(5).unwrap(),
            Formation::p_groups(5).product(&Formation::nilpotent())
        );
    }

    #[test]
    fn flag_propagation() {
        let u = Formation::supersoluble().flags();
        assert_eq!(u.level, 1);
        assert!(u.hereditary && u.saturated());
        assert_eq!(Formation::nilpotent().flags().level, UNBOUNDED);
        let sat = Formation::p_groups(3).product(&Formation::abelian_exponent(2)).flags();
        assert!(sat.hereditary && sat.saturated() && sat.within_supersoluble && !sat.contains_nilpotent);
        let nn = Formation::nilpotent().product(&Formation::nilpotent()).flags();
        assert!(nn.hereditary && nn.contains_nilpotent && !nn.within_supersoluble);
        assert_eq!(nn.length_bound, Some(2));
        let uu = Formation::supersoluble().product(&Formation::supersoluble()).flags();
        assert!(!uu.hereditary);
        let nu = Formation::nilpotent().intersection(&Formation::supersoluble()).flags();
        assert!(nu.hereditary && nu.saturated());
    }
}
