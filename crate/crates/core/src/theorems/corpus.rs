use std::collections::BTreeMap;
use std::sync::Arc;
use std::time::Instant;

use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use rayon::prelude::*;
use serde::Serialize;

use crate::dsl::report::REPORT_SCHEMA_VERSION;
use crate::dsl::{build_group, CorpusEntry, LatticeCache};
use crate::error::{Error, Result};
use crate::formation::{local_membership, Formation};
use crate::group::{FiniteGroup, DEFAULT_ORDER_CAP};
use crate::lattice::LatticeCaps;

use super::{classify_type, lemma_instances, verify_lemma, verify_theorem, Analyzer, LemmaId, Params, TheoremId, TheoremReport, TypeIIChecks, TypeKind};

#[derive(Clone, Copy, Debug, PartialEq, Eq, Hash, PartialOrd, Ord)]
pub enum CheckId {
    Theorem(TheoremId),
    Lemma(LemmaId),
}

/// One theorem over its parameter grid, or one lemma over sampled instances.
#[derive(Clone, Debug)]
pub struct Check {
    pub id: CheckId,
    /// Ignored for lemmas.
    pub grid: Vec<Params>,
}

#[derive(Clone, Debug)]
pub struct RunConfig {
    pub workers: usize,
    pub timing: bool,
    pub seed: u64,
    /// Instances drawn per lemma, formation and group.
    pub lemma_samples: usize,
    pub order_cap: usize,
    pub caps: LatticeCaps,
    /// Formations and `n` values for the type classification section.
    pub classify: Vec<(Formation, usize)>,
}

impl Default for RunConfig {
    fn default() -> Self {
        RunConfig {
            workers: 1,
            timing: false,
            seed: 0x5eed,
            lemma_samples: 2,
            order_cap: DEFAULT_ORDER_CAP,
            caps: LatticeCaps::default(),
            classify: [Formation::nilpotent(), Formation::supersoluble()]
                .into_iter()
                .flat_map(|f| (1..=3).map(move |n| (f.clone(), n)))
                .collect(),
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CellSummary {
    pub check: String,
    pub params: String,
    pub instances: usize,
    pub hypotheses_met: usize,
    /// Instances whose hypotheses held and whose left side was true.
    pub lhs_true: usize,
    pub rhs_true: usize,
    pub passes: usize,
    pub failures: usize,
    pub violations: Vec<TheoremReport>,
    /// The hypotheses held for at least one instance.
    pub exercised: bool,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CellSummary {
    fn new(check: &str, params: &str) -> Self {
        CellSummary {
            check: check.to_string(),
            params: params.to_string(),
            instances: 0,
            hypotheses_met: 0,
            lhs_true: 0,
            rhs_true: 0,
            passes: 0,
            failures: 0,
            violations: Vec::new(),
            exercised: false,
            elapsed_ms: None,
        }
    }

    fn add(&mut self, r: TheoremReport) {
        self.instances += 1;
        if let Some(ms) = r.elapsed_ms {
            *self.elapsed_ms.get_or_insert(0.0) += ms;
        }
        if !r.hypotheses_met {
            return;
        }
        self.hypotheses_met += 1;
        self.exercised = true;
        self.lhs_true += usize::from(r.lhs == Some(true));
        self.rhs_true += usize::from(r.rhs == Some(true));
        if r.is_violation() {
            self.failures += 1;
            self.violations.push(r);
        } else {
            self.passes += 1;
        }
    }
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct ClassificationRecord {
    pub group: String,
    pub formation: String,
    pub n: usize,
    pub kind: TypeKind,
    /// `|pi(G)| >= n + 1`, the range where the classification is claimed.
    pub within_hypothesis: bool,
    pub details: Option<TypeIIChecks>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct SatelliteValidation {
    pub formations: Vec<String>,
    pub groups: usize,
    pub mismatches: Vec<String>,
}

#[derive(Clone, Debug, PartialEq, Eq, Serialize)]
pub struct Skip {
    pub group: String,
    pub reason: String,
}

#[derive(Clone, Debug, PartialEq, Serialize)]
pub struct CorpusSummary {
    pub schema_version: u32,
    pub corpus_size: usize,
    pub groups_analyzed: usize,
    pub satellite_validation: SatelliteValidation,
    pub cells: Vec<CellSummary>,
    /// Type II positives from the classification section.
    pub type_ii: Vec<ClassificationRecord>,
    pub classified: usize,
    pub skips: Vec<Skip>,
    pub instances: usize,
    pub failures: usize,
    pub status: String,
    #[serde(skip_serializing_if = "Option::is_none")]
    pub elapsed_ms: Option<f64>,
}

impl CorpusSummary {
    pub fn ok(&self) -> bool {
        self.failures == 0
    }

    pub fn cell(&self, check: &str, params: &str) -> Option<&CellSummary> {
        self.cells.iter().find(|c| c.check == check && c.params == params)
    }

    /// Cells whose check label is `check`.
    pub fn cells_for<'s>(&'s self, check: &'s str) -> impl Iterator<Item = &'s CellSummary> + 's {
        self.cells.iter().filter(move |c| c.check == check)
    }
}

/// The theorem grids and lemma list of the full acceptance run.
pub fn default_suite() -> Vec<Check> {
    let n = Formation::nilpotent();
    let u = Formation::supersoluble();
    let n2 = Formation::nilpotent_length(2);
    let n3 = Formation::nilpotent_length(3);
    let mut a = Vec::new();
    for (f, rs) in [(&n, 0..=3), (&u, 1..=1), (&n2, 1..=3), (&n3, 2..=3)] {
        for r in rs {
            for k in 1..=4 {
                a.push(Params::new(f.clone(), k, r));
            }
        }
    }
    let nu_grid = |max_n: usize| -> Vec<Params> {
        [&n, &u]
            .into_iter()
            .flat_map(|f| (1..=max_n).map(move |k| Params::new(f.clone(), k, 0)))
            .collect()
    };
    let mut suite = vec![
        Check {
            id: CheckId::Theorem(TheoremId::A),
            grid: a,
        },
        Check {
            id: CheckId::Theorem(TheoremId::B),
            grid: nu_grid(3),
        },
        Check {
            id: CheckId::Theorem(TheoremId::C),
            grid: vec![Params::new(n.clone(), 2, 0), Params::new(u.clone(), 2, 0)],
        },
        Check {
            id: CheckId::Theorem(TheoremId::D),
            grid: nu_grid(3),
        },
        Check {
            id: CheckId::Theorem(TheoremId::SubnormalNilpotent),
            grid: (1..=4).map(|k| Params::new(n.clone(), k, 0)).collect(),
        },
    ];
    suite.extend(LemmaId::ALL.iter().map(|&id| Check { id: CheckId::Lemma(id), grid: Vec::new() }));
    suite
}

fn check_label(id: CheckId) -> String {
    match id {
        CheckId::Theorem(t) => format!("theorem {t}"),
        CheckId::Lemma(l) => format!("lemma {l}"),
    }
}

/// Stable across runs and platforms, unlike the std hasher.
fn stable_hash(parts: &[&str]) -> u64 {
    let mut h: u64 = 0xcbf2_9ce4_8422_2325;
    for part in parts {
        for b in part.bytes().chain([0xff]) {
            h ^= b as u64;
            h = h.wrapping_mul(0x0100_0000_01b3);
        }
    }
    h
}

const SATELLITE_FORMATIONS: [&str; 4] = ["N", "U", "N^2", "S"];

fn satellite_formations() -> Vec<Formation> {
    vec![
        Formation::nilpotent(),
        Formation::supersoluble(),
        Formation::nilpotent_length(2),
        Formation::soluble(),
    ]
}

fn satellite_mismatches(g: &FiniteGroup) -> Result<Vec<String>> {
    let mut out = Vec::new();
    for f in satellite_formations() {
        let direct = f.contains(g);
        let local = local_membership(g, &f)?;
        if direct != local {
            out.push(format!("{}: membership in {f} is {direct} but every chief factor central is {local}", g.name()));
        }
    }
    Ok(out)
}

struct GroupOutcome {
    reports: Vec<(String, String, TheoremReport)>,
    classified: Vec<ClassificationRecord>,
}

fn lemma_cell(id: LemmaId, inst_formation: &Formation, r: u32, variant: u8) -> String {
    match id {
        LemmaId::P3_4 => format!("M={inst_formation} r={r} variant={variant}"),
        LemmaId::P3_1 => format!("variant={variant}"),
        LemmaId::L2_6 | LemmaId::L2_9 | LemmaId::L2_13 => "sampled".into(),
        _ => format!("F={inst_formation}"),
    }
}

fn run_group(
    index: usize,
    g: &Arc<FiniteGroup>,
    suite: &[Check],
    config: &RunConfig,
    cache: &LatticeCache,
) -> Result<GroupOutcome> {
    let l = cache.get(g)?;
    let an = Analyzer::new(&l, cache);
    let mut reports = Vec::new();
    let timed = |f: &mut dyn FnMut() -> Result<TheoremReport>| -> Result<TheoremReport> {
        let t = Instant::now();
        let mut r = f()?;
        if config.timing {
            r.elapsed_ms = Some(t.elapsed().as_secs_f64() * 1e3);
        }
        Ok(r)
    };
    for check in suite {
        let label = check_label(check.id);
        match check.id {
            CheckId::Theorem(t) => {
                for p in &check.grid {
                    let r = timed(&mut || verify_theorem(t, &an, p))?;
                    reports.push((label.clone(), p.label(t), r));
                }
            }
            CheckId::Lemma(id) => {
                let key = format!("{id}");
                let idx = index.to_string();
                let mut rng = ChaCha8Rng::seed_from_u64(config.seed ^ stable_hash(&[&idx, g.name(), &key]));
                for inst in lemma_instances(id, &an, &mut rng, config.lemma_samples) {
                    let r = timed(&mut || verify_lemma(id, &an, &inst))?;
                    reports.push((label.clone(), lemma_cell(id, &inst.formation, inst.r, inst.variant), r));
                }
            }
        }
    }
    let mut classified = Vec::new();
    if an.is_soluble() {
        for (f, n) in &config.classify {
            let c = classify_type(&an, *n, f)?;
            classified.push(ClassificationRecord {
                group: g.name().to_string(),
                formation: c.formation.clone(),
                n: *n,
                kind: c.kind,
                within_hypothesis: g.primes().len() > *n,
                details: c.details,
            });
        }
    }
    Ok(GroupOutcome { reports, classified })
}

/// Runs `suite` over `corpus`. The canonical-satellite table is validated
/// against direct membership on every group first; a mismatch aborts the run.
/// Groups beyond the caps are skipped and listed.
pub fn run_corpus(corpus: &[CorpusEntry], suite: &[Check], config: &RunConfig, cache: &LatticeCache) -> Result<CorpusSummary> {
    let start = Instant::now();
    let pool = rayon::ThreadPoolBuilder::new()
        .num_threads(config.workers.max(1))
        .build()
        .map_err(|e| Error::InvalidParams(format!("cannot start worker pool: {e}")))?;
    pool.install(|| {
        let mut skips = Vec::new();
        let mut groups = Vec::new();
        for e in corpus {
            match build_group(&e.spec, config.order_cap) {
                Ok(g) => groups.push(Arc::new(g.with_name(&e.name))),
                Err(err) => skips.push(Skip {
                    group: e.name.clone(),
                    reason: err.to_string(),
                }),
            }
        }
        let mismatches: Vec<String> = groups
            .par_iter()
            .map(|g| satellite_mismatches(g))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .flatten()
            .collect();
        if !mismatches.is_empty() {
            return Err(Error::SatelliteValidation(mismatches.join("; ")));
        }
        let satellite_validation = SatelliteValidation {
            formations: SATELLITE_FORMATIONS.iter().map(|s| s.to_string()).collect(),
            groups: groups.len(),
            mismatches,
        };
        let outcomes: Vec<(String, Result<GroupOutcome>)> = groups
            .par_iter()
            .enumerate()
            .map(|(i, g)| (g.name().to_string(), run_group(i, g, suite, config, cache)))
            .collect();
        let mut cells: BTreeMap<(String, String), CellSummary> = BTreeMap::new();
        let mut type_ii = Vec::new();
        let mut classified = 0;
        let mut analyzed = 0;
        for (name, outcome) in outcomes {
            match outcome {
                Ok(o) => {
                    analyzed += 1;
                    for (check, params, r) in o.reports {
                        cells
                            .entry((check.clone(), params.clone()))
                            .or_insert_with(|| CellSummary::new(&check, &params))
                            .add(r);
                    }
                    classified += o.classified.len();
                    type_ii.extend(o.classified.into_iter().filter(|c| c.kind == TypeKind::TypeII));
                }
                Err(e @ (Error::LatticeExceedsCap { .. } | Error::ClosureExceedsCap { .. })) => skips.push(Skip {
                    group: name,
                    reason: e.to_string(),
                }),
                Err(e) => return Err(e),
            }
        }
        let cells: Vec<CellSummary> = cells.into_values().collect();
        let instances = cells.iter().map(|c| c.instances).sum();
        let failures = cells.iter().map(|c| c.failures).sum();
        Ok(CorpusSummary {
            schema_version: REPORT_SCHEMA_VERSION,
            corpus_size: corpus.len(),
            groups_analyzed: analyzed,
            satellite_validation,
            cells,
            type_ii,
            classified,
            skips,
            instances,
            failures,
            status: if failures == 0 { "ok" } else { "violations" }.into(),
            elapsed_ms: config.timing.then(|| start.elapsed().as_secs_f64() * 1e3),
        })
    })
}
