use super::*;
use crate::dsl::{parse_corpus, parse_group};
use crate::lattice::{sylow, LatticeCaps};

fn with<T>(spec: &str, f: impl FnOnce(&Analyzer<'_>) -> T) -> T {
    let cache = LatticeCache::new(LatticeCaps::default());
    let g = Arc::new(parse_group(spec, 5000).unwrap());
    let l = cache.get(&g).unwrap();
    let an = Analyzer::new(&l, &cache);
    f(&an)
}

fn theorem(id: TheoremId, spec: &str, f: Formation, n: usize, r: u32) -> TheoremReport {
    with(spec, |an| verify_theorem(id, an, &Params::new(f, n, r)).unwrap())
}

#[test]
fn theorem_c_anchors() {
    let r = theorem(TheoremId::C, "SL23", Formation::supersoluble(), 2, 0);
    assert!(r.hypotheses_met);
    assert_eq!((r.lhs, r.rhs, r.conclusion_holds), (Some(false), Some(false), Some(true)));
    with("SL23", |an| {
        let u = Formation::supersoluble();
        assert!(is_f_critical(an.lattice(), &u));
        let res = u.residual(an.group());
        assert_eq!(res.order(), 8);
        assert!(!minimal_normal_subgroups(an.group()).contains(&res));
        let p3 = an.lattice().idx(&sylow(an.group(), 3));
        assert!(!an.subnormality(&u).is_f_subnormal(p3));
    });
    for g in ["A4", "Frob21"] {
        let r = theorem(TheoremId::C, g, Formation::nilpotent(), 2, 0);
        assert_eq!((r.lhs, r.rhs, r.conclusion_holds), (Some(true), Some(true), Some(true)), "{g}");
    }
}

#[test]
fn theorem_c_skips_nonsoluble_critical() {
    // A5 is S-critical but not soluble
    let r = theorem(TheoremId::C, "A5", Formation::soluble(), 2, 0);
    assert!(!r.hypotheses_met);
    assert_eq!(r.conclusion_holds, None);
    assert_eq!(serde_json::to_value(&r).unwrap()["conclusion_holds"], "not_applicable");
}

#[test]
fn theorem_d_frob21() {
    let r = theorem(TheoremId::D, "Frob21", Formation::nilpotent(), 2, 0);
    assert_eq!((r.lhs, r.rhs, r.conclusion_holds), (Some(true), Some(true), Some(true)));
    assert!(r.notes.iter().any(|s| s == "ordering [7, 3]"));
}

#[test]
fn theorem_a_checks_flags() {
    with("S4", |an| {
        let bad = verify_theorem(TheoremId::A, an, &Params::new(Formation::supersoluble(), 1, 0));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let bad = verify_theorem(TheoremId::A, an, &Params::new(Formation::supersoluble(), 1, 2));
        assert!(matches!(bad, Err(Error::InvalidParams(_))));
        let r = verify_theorem(TheoremId::A, an, &Params::new(Formation::nilpotent(), 1, 0)).unwrap();
        assert!(r.hypotheses_met && r.notes[0].contains("r = 0"));
        // S4 has two primes, so n + r + 1 <= 2 forces n = 1, r = 0
        let r = verify_theorem(TheoremId::A, an, &Params::new(Formation::nilpotent_length(2), 1, 1)).unwrap();
        assert!(!r.hypotheses_met);
    });
}

#[test]
fn theorem_b_and_nilpotency_on_small_groups() {
    for g in ["S3 x C5", "A4 x C5", "Frob21 x C2", "D10 x C3"] {
        for f in [Formation::nilpotent(), Formation::supersoluble()] {
            for n in 1..=2 {
                let r = theorem(TheoremId::B, g, f.clone(), n, 0);
                assert!(!r.is_violation(), "{r:?}");
            }
        }
        for n in 1..=2 {
            assert!(!theorem(TheoremId::SubnormalNilpotent, g, Formation::nilpotent(), n, 0).is_violation());
        }
    }
}

#[test]
fn classification_examples() {
    with("S3", |an| {
        for n in 1..=3 {
            assert_eq!(classify_type(an, n, &Formation::supersoluble()).unwrap().kind, TypeKind::TypeI);
        }
    });
    with("Frob21", |an| {
        let c = classify_type(an, 2, &Formation::nilpotent()).unwrap();
        assert_eq!(c.kind, TypeKind::TypeII);
        assert_eq!(c.a.as_ref().unwrap().order(), 7);
        assert_eq!(c.b.as_ref().unwrap().order(), 3);
        let d = c.details.unwrap();
        assert_eq!(d.a_shape, Some(AShape::ProductOfMinimalNormalSylows { primes: vec![7] }));
        // the only 2-maximal subgroup is trivial
        assert_eq!(d.ii2_checks.len(), 1);
        assert_eq!(d.ii2_checks[0].subgroup_order, 1);
    });
    with("S4", |an| {
        let c = classify_type(an, 1, &Formation::supersoluble()).unwrap();
        assert_eq!(c.kind, TypeKind::NotOfEitherType);
        let d = c.details.unwrap();
        assert_eq!(d.a_order, 4);
        assert!(!d.a_hall);
    });
}

#[test]
fn special_sylow_shape() {
    // SL(2,3) under U: the residual Q8 has exponent 4, so the p-group shape fails
    with("SL23", |an| {
        let c = classify_type(an, 1, &Formation::supersoluble()).unwrap();
        match c.details.unwrap().a_shape {
            Some(AShape::SpecialSylowP {
                prime,
                exponent_ok,
                derived_eq_frattini_eq_center,
                top_factor_eccentric,
            }) => {
                assert_eq!(prime, 2);
                assert!(!exponent_ok && derived_eq_frattini_eq_center && top_factor_eccentric);
            }
            other => panic!("{other:?}"),
        }
    });
}

fn lemma(id: &str, spec: &str, f: Formation, subgroups: impl Fn(&Analyzer<'_>) -> Vec<usize>) -> TheoremReport {
    with(spec, |an| {
        let mut inst = LemmaInstance::new(f);
        inst.subgroups = subgroups(an);
        verify_lemma(id.parse().unwrap(), an, &inst).unwrap()
    })
}

#[test]
fn lemma_examples() {
    with("D8", |an| {
        for h in 0..an.lattice().len() {
            let mut inst = LemmaInstance::new(Formation::nilpotent());
            inst.subgroups = vec![h];
            let r = verify_lemma(LemmaId::L2_2, an, &inst).unwrap();
            assert_eq!((r.lhs, r.conclusion_holds), (Some(true), Some(true)));
        }
    });
    let v4 = |an: &Analyzer<'_>| vec![an.lattice().idx(&crate::lattice::fitting(an.group()))];
    let r = lemma("2.7", "S4", Formation::supersoluble(), v4);
    assert_eq!((r.lhs, r.rhs, r.conclusion_holds), (Some(false), Some(false), Some(true)));
    let a4 = |an: &Analyzer<'_>| {
        let l = an.lattice();
        vec![(0..l.len()).find(|&i| l.get(i).order() == 12).unwrap()]
    };
    let r = lemma("2.14", "S4", Formation::supersoluble(), a4);
    assert!(r.hypotheses_met && r.lhs == Some(false) && r.conclusion_holds == Some(true));
}

#[test]
fn structural_lemmas_hold_on_critical_groups() {
    for (g, f) in [("SL23", Formation::supersoluble()), ("A4", Formation::nilpotent()), ("S4", Formation::supersoluble())] {
        for id in ["2.4", "2.5", "2.6"] {
            let r = lemma(id, g, f.clone(), |_| Vec::new());
            assert!(!r.is_violation(), "{id} {g}: {r:?}");
        }
    }
    // A4 under N: the N-abnormal maximal subgroups are the Sylow 3s, which are nilpotent
    let r = lemma("2.4", "A4", Formation::nilpotent(), |_| Vec::new());
    assert_eq!((r.lhs, r.conclusion_holds), (Some(true), Some(true)));
    let r = lemma("2.6", "SL23", Formation::supersoluble(), |_| Vec::new());
    assert_eq!((r.lhs, r.conclusion_holds), (Some(true), Some(true)));
}

#[test]
fn no_soluble_triple_in_a5() {
    with("A5", |an| {
        for variant in 1..=3 {
            let mut inst = LemmaInstance::new(Formation::supersoluble());
            inst.variant = variant;
            let r = verify_lemma(LemmaId::P3_1, an, &inst).unwrap();
            assert_eq!(r.lhs, Some(false), "variant {variant}");
        }
    });
}

#[test]
fn lemma_ids_roundtrip() {
    for id in LemmaId::ALL {
        assert_eq!(id.to_string().parse::<LemmaId>().unwrap(), id);
    }
    assert_eq!(LemmaId::parse_many("2.1").unwrap().len(), 4);
    assert!("2.8".parse::<LemmaId>().is_err());
}

#[test]
fn corpus_runs() {
    let cache = LatticeCache::new(LatticeCaps::default());
    let empty = run_corpus(&[], &default_suite(), &RunConfig::default(), &cache).unwrap();
    assert_eq!((empty.instances, empty.status.as_str()), (0, "ok"));
    let corpus = parse_corpus(r#"[{"name": "S4", "spec": "S4"}]"#).unwrap();
    let suite = [Check {
        id: CheckId::Theorem(TheoremId::C),
        grid: vec![
            Params::new(Formation::nilpotent(), 2, 0),
            Params::new(Formation::supersoluble(), 2, 0),
        ],
    }];
    let s = run_corpus(&corpus, &suite, &RunConfig::default(), &cache).unwrap();
    assert_eq!(s.instances, 2);
    assert_eq!(s.cells.iter().map(|c| c.passes).sum::<usize>(), 2);
    assert!(s.ok());
}
