use crate::error::Result;
use crate::group::{FiniteGroup, Subgroup};
use crate::lattice::{chief_series, minimal_normal_over, ChiefFactor};

use super::{factor_primes, Formation};

/// `G/C_G(H/K)` lies in `F(p)` for every prime `p` dividing `|H/K|`.
pub fn is_f_central(g: &FiniteGroup, cf: &ChiefFactor, f: &Formation) -> Result<bool> {
    let c = g.factor_centralizer(&cf.upper, &cf.lower);
    let q = g.quotient(&c)?;
    for p in factor_primes(cf.order) {
        if !f.canonical_satellite(p)?.contains(&q.group) {
            return Ok(false);
        }
    }
    Ok(true)
}

/// Every chief factor of `G` is `F`-central.
pub fn local_membership(g: &FiniteGroup, f: &Formation) -> Result<bool> {
    f.canonical_satellite(2)?;
    for cf in &chief_series(g).factors {
        if !is_f_central(g, cf, f)? {
            return Ok(false);
        }
    }
    Ok(true)
}

/// `Z_F(G)`, by ascending through `F`-central minimal normal subgroups of
/// successive quotients. Centrality is constant on chief factors of one
/// isomorphism type, so the greedy ascent cannot stop below the hypercentre.
pub fn f_hypercentre(g: &FiniteGroup, f: &Formation) -> Result<Subgroup> {
    f.canonical_satellite(2)?;
    let mut z = g.trivial_subgroup();
    'up: loop {
        for upper in minimal_normal_over(g, &z) {
            let cf = ChiefFactor {
                order: upper.order() / z.order(),
                prime: crate::numbers::prime_power_base((upper.order() / z.order()) as u64),
                lower: z.clone(),
                upper,
            };
            if is_f_central(g, &cf, f)? {
                z = cf.upper;
                continue 'up;
            }
        }
        return Ok(z);
    }
}
