mod common;

use common::{cache, corpus, up_to};
use nmax::dsl::{shipped_corpus, to_canonical_json};
use nmax::formation::Formation;
use nmax::theorems::{classify_type, default_suite, run_corpus, verify_theorem, Analyzer, Params, RunConfig, TheoremId, TypeKind};

#[test]
fn theorem_b_agrees_with_classification() {
    for e in up_to(400) {
        let an = Analyzer::new(&e.lattice, cache());
        for f in [Formation::nilpotent(), Formation::supersoluble()] {
            for n in 1..=3 {
                let rep = verify_theorem(TheoremId::B, &an, &Params::new(f.clone(), n, 0)).unwrap();
                assert!(!rep.is_violation(), "{} {f} n={n}", e.name);
                let c = classify_type(&an, n, &f).unwrap();
                assert_eq!(c.kind == TypeKind::TypeI, f.contains(&e.group));
                if rep.hypotheses_met {
                    assert_eq!(rep.rhs, Some(c.kind != TypeKind::NotOfEitherType), "{} {f} n={n}", e.name);
                }
            }
        }
    }
}

#[test]
fn subnormal_premise_passes_to_deeper_levels() {
    for e in corpus() {
        let an = Analyzer::new(&e.lattice, cache());
        for f in [Formation::nilpotent(), Formation::supersoluble()] {
            let o = an.subnormality(&f);
            for n in 1..4 {
                if o.all_n_maximal_f_subnormal(n).0 {
                    assert!(o.all_n_maximal_f_subnormal(n + 1).0, "{} {f} n={n}", e.name);
                }
            }
        }
    }
}

#[test]
fn corpus_run_is_reproducible() {
    let entries: Vec<_> = shipped_corpus().into_iter().filter(|e| ["S4", "SL23", "Frob21", "A5", "D12", "S3 x C5 x C7"].contains(&e.name.as_str())).collect();
    // fresh caches so the parallel run builds its own lattices
    let suite = default_suite();
    let one = run_corpus(&entries, &suite, &RunConfig::default(), &Default::default()).unwrap();
    let four = run_corpus(&entries, &suite, &RunConfig { workers: 4, ..RunConfig::default() }, &Default::default()).unwrap();
    assert!(one.ok());
    assert_eq!(to_canonical_json(&one).unwrap(), to_canonical_json(&four).unwrap());
}
