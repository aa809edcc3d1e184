mod common;

use std::collections::BTreeSet;

use common::{brute_force_subgroups, corpus, entry, up_to};
use nmax::dsl::cache::{cache_lattice, load_cached_lattice};
use nmax::lattice::{chief_series, chief_series_with, fitting, normal_subgroups, sylow, TieBreak};
use nmax::numbers::prime_power_base;
use nmax::structure::is_soluble;

#[test]
fn lattice_matches_brute_force() {
    for e in up_to(48) {
        let oracle = brute_force_subgroups(&e.group);
        assert_eq!(e.lattice.subgroups(), &oracle[..], "{}", e.name);
    }
    assert_eq!(entry("S3").lattice.len(), 6);
    assert_eq!(entry("S4").lattice.len(), 30);
}

#[test]
fn next_level_of_maximal_subgroups() {
    for e in corpus() {
        let l = &e.lattice;
        for n in 0..4 {
            let below: BTreeSet<usize> = l
                .n_maximal_indices(l.top(), n)
                .into_iter()
                .flat_map(|h| l.lower_covers(h).to_vec())
                .collect();
            let next: BTreeSet<usize> = l.n_maximal_indices(l.top(), n + 1).into_iter().collect();
            assert!(next.is_subset(&below), "{} n={n}", e.name);
        }
    }
}

#[test]
fn chief_factors() {
    for e in corpus() {
        let g = &e.group;
        let first = chief_series(g);
        let last = chief_series_with(g, TieBreak::Last);
        let mut a = first.factor_orders();
        let mut b = last.factor_orders();
        a.sort_unstable();
        b.sort_unstable();
        assert_eq!(a, b, "{}", e.name);
        assert_eq!(a.iter().product::<usize>(), g.order());
        if is_soluble(g) {
            assert!(a.iter().all(|&o| o == 1 || prime_power_base(o as u64).is_some()), "{}", e.name);
        }
    }
}

#[test]
fn frattini_fitting_sylow_hall() {
    for e in corpus() {
        let g = &e.group;
        let l = &e.lattice;
        assert!(g.is_normal(&l.frattini()), "{}", e.name);
        let f = fitting(g);
        assert!(g.is_normal(&f) && g.is_nilpotent_subgroup(&f));
        for n in normal_subgroups(g) {
            if g.is_nilpotent_subgroup(&n) {
                assert!(n.is_subgroup_of(&f), "{}", e.name);
            }
        }
        let n = g.order() as u64;
        for p in g.primes() {
            let s = sylow(g, p);
            assert_eq!(s.order() as u64, nmax::numbers::p_part(n, p));
            let class: BTreeSet<_> = g.elements().map(|x| g.conjugate_subgroup(&s, x)).collect();
            let in_lattice: BTreeSet<_> = l.sylow_subgroups(p).into_iter().map(|i| l.get(i).clone()).collect();
            assert_eq!(class, in_lattice, "{} p={p}", e.name);
        }
        if is_soluble(g) {
            let primes = g.primes();
            for mask in 0..1u32 << primes.len() {
                let pi: Vec<u64> = primes.iter().enumerate().filter(|(i, _)| mask >> i & 1 == 1).map(|(_, &p)| p).collect();
                assert!(l.hall(&pi).is_some(), "{} pi={pi:?}", e.name);
            }
        }
    }
    assert!(entry("A5").lattice.hall(&[3, 5]).is_none());
}

#[test]
fn cached_lattices_are_sound() {
    let dir = tempfile::tempdir().unwrap();
    for e in up_to(200) {
        cache_lattice(&e.lattice, dir.path()).unwrap();
        let back = load_cached_lattice(&e.group, dir.path()).unwrap().unwrap();
        assert_eq!(back.subgroups(), e.lattice.subgroups());
        for i in 0..back.len() {
            assert_eq!(back.upper_covers(i), e.lattice.upper_covers(i));
        }
        assert!(back.check_intersection_closed(1), "{}", e.name);
    }
}
