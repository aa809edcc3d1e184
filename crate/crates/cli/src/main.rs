use std::collections::BTreeMap;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::Arc;

use clap::{Args, Parser, Subcommand, ValueEnum};
use rand_chacha::rand_core::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::Serialize;
use serde_json::{json, Value};

use nmax::dsl::formation::formation;
use nmax::dsl::{load_corpus, parse_group_spec, shipped_corpus, to_canonical_json, write_report, CorpusEntry, LatticeCache};
use nmax::formation::{f_hypercentre, is_f_critical, Formation};
use nmax::lattice::{normal_subgroups, LatticeCaps};
use nmax::structure::{dispersiveness, profile};
use nmax::theorems::{
    classify_type, default_suite, lemma_instances, run_corpus, verify_lemma, verify_theorem, Analyzer, Check, CheckId, CorpusSummary, LemmaId, Params,
    RunConfig, TheoremId, TheoremReport,
};
use nmax::{FiniteGroup, SubgroupLattice};

mod text;

#[derive(Parser)]
#[command(name = "nmax", version, about = "Finite groups, formations and F-subnormal n-maximal subgroups")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Structure profile, residual, hypercentre and criticality of a group.
    Analyze {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formation: String,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        caps: Caps,
    },
    /// Subgroup counts by order.
    Lattice {
        #[arg(long)]
        group: String,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        caps: Caps,
    },
    /// Type I / type II classification of a group.
    Classify {
        #[arg(long)]
        group: String,
        #[arg(long)]
        formation: String,
        #[arg(short = 'n', default_value_t = 1, value_parser = clap::value_parser!(u32).range(1..))]
        n: u32,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        caps: Caps,
    },
    /// Check one theorem or lemma on a group or over a corpus.
    Verify(Verify),
    /// Run the full check suite over a corpus.
    Corpus {
        /// Corpus file; the shipped corpus when omitted.
        #[arg(long)]
        path: Option<PathBuf>,
        #[arg(long, value_enum, default_value_t = Suite::Full)]
        suite: Suite,
        #[command(flatten)]
        run: Run,
        #[command(flatten)]
        out: Output,
        #[command(flatten)]
        caps: Caps,
    },
}

#[derive(Args)]
#[group(id = "what", required = true, multiple = false)]
struct Verify {
    /// A, B, C, D or 3.7.
    #[arg(long, group = "what")]
    theorem: Option<String>,
    /// Lemma id such as 2.2 or 2.1(3); bare 2.1 runs all four parts.
    #[arg(long, group = "what")]
    lemma: Option<String>,
    #[arg(long)]
    formation: Option<String>,
    #[arg(short = 'n')]
    n: Option<usize>,
    #[arg(long)]
    r: Option<u32>,
    #[arg(long, conflicts_with = "corpus", required_unless_present = "corpus")]
    group: Option<String>,
    /// Corpus file, or `shipped` for the built-in corpus.
    #[arg(long)]
    corpus: Option<String>,
    #[command(flatten)]
    run: Run,
    #[command(flatten)]
    out: Output,
    #[command(flatten)]
    caps: Caps,
}

#[derive(Clone, Copy, ValueEnum)]
enum Suite {
    Full,
}

#[derive(Clone, Copy, PartialEq, Eq, ValueEnum)]
enum Format {
    Json,
    Text,
}

#[derive(Args)]
struct Output {
    /// Write the report here instead of standard output.
    #[arg(long)]
    output: Option<PathBuf>,
    #[arg(long, value_enum, default_value_t = Format::Json)]
    format: Format,
}

#[derive(Args)]
struct Caps {
    /// Largest group order accepted when generating a group.
    #[arg(long, default_value_t = nmax::group::DEFAULT_ORDER_CAP, value_parser = positive)]
    order_cap: usize,
    /// Largest group order whose subgroup lattice is enumerated.
    #[arg(long, default_value_t = LatticeCaps::default().max_order, value_parser = positive)]
    lattice_order_cap: usize,
    #[arg(long, default_value_t = LatticeCaps::default().max_subgroups, value_parser = positive)]
    max_subgroups: usize,
    /// Directory for cached lattices, reused across runs.
    #[arg(long)]
    cache_dir: Option<PathBuf>,
}

#[derive(Args)]
struct Run {
    #[arg(long, default_value_t = 1, value_parser = positive)]
    workers: usize,
    /// Include wall-clock times in reports.
    #[arg(long)]
    timing: bool,
    #[arg(long, default_value_t = RunConfig::default().seed)]
    seed: u64,
    /// Lemma instances drawn per lemma and group.
    #[arg(long, default_value_t = RunConfig::default().lemma_samples, value_parser = positive)]
    samples: usize,
}

fn positive(s: &str) -> Result<usize, String> {
    match s.parse::<usize>() {
        Ok(0) => Err("must be positive".into()),
        Ok(v) => Ok(v),
        Err(e) => Err(e.to_string()),
    }
}

impl Caps {
    fn lattice(&self) -> LatticeCaps {
        LatticeCaps {
            max_order: self.lattice_order_cap,
            max_subgroups: self.max_subgroups,
        }
    }

    fn cache(&self) -> Result<LatticeCache, Failure> {
        match &self.cache_dir {
            Some(d) => {
                std::fs::create_dir_all(d).map_err(|e| Failure::Usage(format!("cache directory {}: {e}", d.display())))?;
                Ok(LatticeCache::with_dir(self.lattice(), d.clone()))
            }
            None => Ok(LatticeCache::new(self.lattice())),
        }
    }
}

/// Failure modes mapped to exit codes.
enum Failure {
    /// A verification produced a counterexample.
    Violation,
    Usage(String),
}

impl From<nmax::Error> for Failure {
    fn from(e: nmax::Error) -> Self {
        Failure::Usage(e.to_string())
    }
}

type Outcome = Result<(), Failure>;

fn main() -> ExitCode {
    let cli = Cli::parse();
    match dispatch(cli.command) {
        Ok(()) => ExitCode::SUCCESS,
        Err(Failure::Violation) => ExitCode::from(1),
        Err(Failure::Usage(msg)) => {
            eprintln!("error: {msg}");
            ExitCode::from(2)
        }
    }
}

fn dispatch(cmd: Command) -> Outcome {
    match cmd {
        Command::Analyze { group, formation, out, caps } => analyze(&group, &formation, &out, &caps),
        Command::Lattice { group, out, caps } => lattice(&group, &out, &caps),
        Command::Classify { group, formation, n, out, caps } => classify(&group, &formation, n as usize, &out, &caps),
        Command::Verify(v) => verify(&v),
        Command::Corpus { path, suite: Suite::Full, run, out, caps } => {
            let entries = match path {
                Some(p) => load_corpus(&p)?,
                None => shipped_corpus(),
            };
            corpus(&entries, &default_suite(), &run, &out, &caps)
        }
    }
}

struct Loaded {
    group: Arc<FiniteGroup>,
    lattice: Arc<SubgroupLattice>,
    cache: LatticeCache,
}

fn load(text: &str, caps: &Caps) -> Result<Loaded, Failure> {
    let spec = parse_group_spec(text)?;
    let group = Arc::new(nmax::dsl::build_group(&spec, caps.order_cap)?);
    let cache = caps.cache()?;
    let lattice = cache.get(&group)?;
    Ok(Loaded { group, lattice, cache })
}

fn emit<T: Serialize>(value: &T, text: impl FnOnce() -> String, out: &Output) -> Outcome {
    match (out.format, &out.output) {
        (Format::Json, Some(p)) => write_report(value, p)?,
        (Format::Json, None) => stdout(&format!("{}\n", to_canonical_json(value)?)),
        (Format::Text, Some(p)) => nmax::dsl::report::write_atomic(p, &text())?,
        (Format::Text, None) => stdout(&text()),
    }
    Ok(())
}

/// A closed pipe downstream (`| head`) is not an error.
fn stdout(s: &str) {
    let mut out = std::io::stdout().lock();
    if let Err(e) = out.write_all(s.as_bytes()).and_then(|()| out.flush()) {
        if e.kind() != std::io::ErrorKind::BrokenPipe {
            eprintln!("error: writing output: {e}");
        }
    }
}

fn members(g: &FiniteGroup, h: &nmax::Subgroup) -> Value {
    json!({ "order": h.order(), "generators": g.small_generating_set(h) })
}

fn analyze(group: &str, f: &str, out: &Output, caps: &Caps) -> Outcome {
    let f = formation(f)?;
    let ld = load(group, caps)?;
    let g = &ld.group;
    let residual = f.residual(g);
    let hypercentre = if f.has_satellite() {
        members(g, &f_hypercentre(g, &f)?)
    } else {
        Value::Null
    };
    let d = dispersiveness(g);
    let report = json!({
        "group": g.name(),
        "fingerprint": format!("{:016x}", g.fingerprint()),
        "profile": profile(g),
        "formation": f.to_string(),
        "in_formation": f.contains(g),
        "residual": members(g, &residual),
        "hypercentre": hypercentre,
        "critical": is_f_critical(&ld.lattice, &f),
        "subgroups": ld.lattice.len(),
        "frattini_order": ld.lattice.frattini().order(),
        "fitting_order": nmax::lattice::fitting(g).order(),
        "dispersive": d,
    });
    emit(&report, || text::analysis(&report), out)
}

fn lattice(group: &str, out: &Output, caps: &Caps) -> Outcome {
    let ld = load(group, caps)?;
    let l = &ld.lattice;
    let g = &ld.group;
    let mut by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for h in l.subgroups() {
        *by_order.entry(h.order()).or_insert(0) += 1;
    }
    let mut normal_by_order: BTreeMap<usize, usize> = BTreeMap::new();
    for n in normal_subgroups(g) {
        *normal_by_order.entry(n.order()).or_insert(0) += 1;
    }
    let mut maximal: Vec<usize> = l.lower_covers(l.top()).iter().map(|&m| l.get(m).order()).collect();
    maximal.sort_unstable();
    let report = json!({
        "group": g.name(),
        "order": g.order(),
        "subgroups": l.len(),
        "by_order": by_order.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "normal_by_order": normal_by_order.iter().map(|(k, v)| (k.to_string(), json!(v))).collect::<serde_json::Map<_, _>>(),
        "maximal_orders": maximal,
    });
    emit(&report, || text::lattice(&report), out)
}

fn classify(group: &str, f: &str, n: usize, out: &Output, caps: &Caps) -> Outcome {
    let f = formation(f)?;
    let ld = load(group, caps)?;
    let an = Analyzer::new(&ld.lattice, &ld.cache);
    let c = classify_type(&an, n, &f)?;
    emit(&c, || format!("{}\n", c.summary()), out)
}

fn theorem_params(id: TheoremId, v: &Verify) -> Result<Vec<Params>, Failure> {
    let f = match (&v.formation, id) {
        (Some(s), _) => formation(s)?,
        (None, TheoremId::SubnormalNilpotent) => Formation::nilpotent(),
        (None, _) => return Err(Failure::Usage(format!("theorem {id} needs --formation"))),
    };
    Ok(vec![Params::new(f, v.n.unwrap_or(1), v.r.unwrap_or(0))])
}

fn verify(v: &Verify) -> Outcome {
    if let Some(path) = &v.corpus {
        let entries = if path == "shipped" { shipped_corpus() } else { load_corpus(Path::new(path))? };
        let full = default_suite();
        let suite = match (&v.theorem, &v.lemma) {
            (Some(t), _) => {
                let id: TheoremId = t.parse()?;
                let grid = if v.formation.is_some() || v.n.is_some() || v.r.is_some() {
                    theorem_params(id, v)?
                } else {
                    full.into_iter().find(|c| c.id == CheckId::Theorem(id)).map(|c| c.grid).unwrap_or_default()
                };
                vec![Check { id: CheckId::Theorem(id), grid }]
            }
            (None, Some(l)) => LemmaId::parse_many(l)?
                .into_iter()
                .map(|id| Check { id: CheckId::Lemma(id), grid: Vec::new() })
                .collect(),
            (None, None) => unreachable!("clap requires one of --theorem and --lemma"),
        };
        return corpus(&entries, &suite, &v.run, &v.out, &v.caps);
    }

    let ld = load(v.group.as_deref().expect("clap requires --group without --corpus"), &v.caps)?;
    let an = Analyzer::new(&ld.lattice, &ld.cache);
    let mut reports: Vec<TheoremReport> = Vec::new();
    if let Some(t) = &v.theorem {
        let id: TheoremId = t.parse()?;
        for p in theorem_params(id, v)? {
            reports.push(verify_theorem(id, &an, &p)?);
        }
    } else if let Some(l) = &v.lemma {
        let wanted = v.formation.as_deref().map(formation).transpose()?;
        for id in LemmaId::parse_many(l)? {
            let mut rng = ChaCha8Rng::seed_from_u64(v.run.seed);
            let mut insts = lemma_instances(id, &an, &mut rng, v.run.samples);
            if let Some(f) = &wanted {
                let matching: Vec<_> = insts.iter().filter(|i| i.formation.name() == f.name()).cloned().collect();
                insts = if matching.is_empty() {
                    // the sampler never draws this formation; reuse its subgroup choices
                    insts.into_iter().map(|mut i| {
                        i.formation = f.clone();
                        i
                    }).collect()
                } else {
                    matching
                };
            }
            for inst in insts {
                reports.push(verify_lemma(id, &an, &inst)?);
            }
        }
    }
    let violations: Vec<&TheoremReport> = reports.iter().filter(|r| r.is_violation()).collect();
    for r in &violations {
        eprintln!("violation: {} {} on {}: {}", r.theorem_id, r.params, r.group, r.witness.as_deref().unwrap_or("no witness"));
    }
    if reports.len() == 1 {
        emit(&reports[0], || text::reports(&reports), &v.out)?;
    } else {
        emit(&reports, || text::reports(&reports), &v.out)?;
    }
    if violations.is_empty() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}

fn corpus(entries: &[CorpusEntry], suite: &[Check], run: &Run, out: &Output, caps: &Caps) -> Outcome {
    let config = RunConfig {
        workers: run.workers,
        timing: run.timing,
        seed: run.seed,
        lemma_samples: run.samples,
        order_cap: caps.order_cap,
        caps: caps.lattice(),
        ..RunConfig::default()
    };
    let summary: CorpusSummary = run_corpus(entries, suite, &config, &caps.cache()?)?;
    for c in &summary.cells {
        for r in &c.violations {
            eprintln!("violation: {} {} on {}: {}", c.check, c.params, r.group, r.witness.as_deref().unwrap_or("no witness"));
        }
    }
    emit(&summary, || text::summary(&summary), out)?;
    if summary.ok() {
        Ok(())
    } else {
        Err(Failure::Violation)
    }
}
