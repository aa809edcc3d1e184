mod common;

use common::{corpus, up_to};
use nmax::lattice::normal_subgroups;
use proptest::prelude::*;

#[test]
fn lagrange_and_determinism() {
    for e in corpus() {
        for h in e.lattice.subgroups() {
            assert_eq!(e.group.order() % h.order(), 0, "{}", e.name);
        }
    }
    for e in up_to(200) {
        let again = nmax::dsl::parse_group(&nmax::dsl::shipped_corpus().into_iter().find(|c| c.name == e.name).unwrap().spec.to_string(), 5000).unwrap();
        assert_eq!(again.fingerprint(), e.group.fingerprint(), "{}", e.name);
        assert_eq!(again.table(), e.group.table());
    }
}

#[test]
fn quotient_projection_is_a_homomorphism() {
    for e in up_to(60) {
        let g = &e.group;
        for n in normal_subgroups(g) {
            let q = g.quotient(&n).unwrap();
            assert_eq!(q.group.order() * n.order(), g.order());
            for a in g.elements() {
                for b in g.elements() {
                    assert_eq!(q.group.mul(q.project(a), q.project(b)), q.project(g.mul(a, b)), "{}", e.name);
                }
            }
        }
    }
}

fn pick() -> impl Strategy<Value = (usize, usize, usize, u32)> {
    let n = up_to(400).count();
    (0..n, any::<usize>(), any::<usize>(), any::<u32>())
}

proptest! {
    #![proptest_config(ProptestConfig::with_cases(400))]

    #[test]
    fn core_closure_sandwich((gi, hi, _, _) in pick()) {
        let e = up_to(400).nth(gi).unwrap();
        let g = &e.group;
        let h = e.lattice.get(hi % e.lattice.len());
        let core = g.core(h);
        let ncl = g.normal_closure(h);
        prop_assert!(g.is_normal(&core) && g.is_normal(&ncl));
        prop_assert!(core.is_subgroup_of(h) && h.is_subgroup_of(&ncl));
        // oracles: the core is the intersection of all conjugates, the closure
        // the join of all normal subgroups' smallest member containing h
        let mut meet = h.clone();
        for x in g.elements() {
            meet = meet.intersection(&g.conjugate_subgroup(h, x));
        }
        prop_assert_eq!(core, meet);
        let smallest = normal_subgroups(g).into_iter().filter(|n| h.is_subgroup_of(n)).min_by_key(|n| n.order()).unwrap();
        prop_assert_eq!(ncl, smallest);
    }

    #[test]
    fn factorization_survives_conjugation((gi, ai, bi, x) in pick()) {
        let e = up_to(400).nth(gi).unwrap();
        let g = &e.group;
        let l = &e.lattice;
        let a = l.get(ai % l.len());
        // bias towards factorizing pairs
        let partners: Vec<usize> = (0..l.len()).filter(|&j| g.product_set(a, l.get(j)).count() == g.order()).collect();
        let b = l.get(partners[bi % partners.len()]);
        let x = x % g.order() as u32;
        prop_assert_eq!(g.product_set(a, &g.conjugate_subgroup(b, x)).count(), g.order());
    }
}
