mod config;
mod report;

use std::io::Write as _;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::sync::atomic::{AtomicUsize, Ordering};
use std::sync::Mutex;
use std::time::Instant;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};
use holembed::corpus::{self, CorpusEntry};
use holembed::embed::Problem;
use holembed::logics::{parse_problem, Expectation, Logic};
use holembed::semantics::{countermodel_search_with, witness_text, BoundedVerdict, Bounds, SearchOptions};
use holembed::thf::{emit_thf, run_prover, EmitMode, ProverConfig, ProverError, SzsStatus, ThfOptions};

use config::Config;
use report::{Record, RunReport};

#[derive(Parser)]
#[command(name = "holembed", version, about = "Embed modal, intuitionistic and spatial problems in higher-order logic")]
struct Cli {
    /// Settings file with `key = value` lines.
    #[arg(long, global = true)]
    config: Option<PathBuf>,
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// Translate a problem file to THF.
    Embed(EmbedArgs),
    /// Search for a finite countermodel.
    Check(CheckArgs),
    /// List, export or run the built-in corpus.
    #[command(subcommand)]
    Corpus(CorpusCommand),
    /// Run an external THF prover on a problem.
    Prove(ProveArgs),
}

#[derive(Args)]
struct EmbedArgs {
    /// A `.lgp` file or `corpus:<id>`.
    problem: String,
    /// Logic the file is written in; must agree with its `logic` line.
    #[arg(long)]
    logic: Option<String>,
    #[command(flatten)]
    thf: ThfArgs,
    /// Write here instead of standard output.
    #[arg(long, short)]
    out: Option<PathBuf>,
}

#[derive(Args, Clone)]
struct ThfArgs {
    /// `defined` keeps operator definitions, `unfolded` expands them.
    #[arg(long)]
    mode: Option<EmitMode>,
    /// Worlds as a declared `mu` and individuals as `$i`.
    #[arg(long)]
    swap_types: bool,
    /// Give definitions the role `axiom`.
    #[arg(long)]
    definitions_as_axioms: bool,
}

#[derive(Args, Clone, Default)]
struct BoundArgs {
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    max_worlds: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    max_ind: Option<u64>,
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..=8))]
    max_regions: Option<u64>,
    /// Worker threads.
    #[arg(long, value_parser = clap::value_parser!(u64).range(1..))]
    jobs: Option<u64>,
}

#[derive(Args)]
struct CheckArgs {
    /// A `.lgp` file or `corpus:<id>`.
    problem: String,
    #[command(flatten)]
    bounds: BoundArgs,
    /// Directory for countermodel files.
    #[arg(long)]
    witness_dir: Option<PathBuf>,
}

#[derive(Args, Clone, Default)]
struct ProverArgs {
    /// Prover command with `{file}` and `{timeout}`; without a value, the
    /// configured or `HOLEMBED_PROVER` command.
    #[arg(long, num_args = 0..=1, default_missing_value = "")]
    prover: Option<String>,
    /// Prover time limit in seconds.
    #[arg(long)]
    timeout: Option<u64>,
    /// Where problem files for the prover are kept.
    #[arg(long)]
    run_dir: Option<PathBuf>,
    /// Delete problem files after the run.
    #[arg(long)]
    clean: bool,
}

#[derive(Subcommand)]
enum CorpusCommand {
    /// One JSON line per entry.
    List,
    /// Write `.lgp` and `.p` files for every entry.
    Export {
        dir: PathBuf,
        #[command(flatten)]
        thf: ThfArgs,
    },
    /// Check every entry against its expected status.
    Run {
        #[command(flatten)]
        bounds: BoundArgs,
        #[command(flatten)]
        prover: ProverArgs,
        #[command(flatten)]
        thf: ThfArgs,
        /// Only these entries (comma separated).
        #[arg(long, value_delimiter = ',')]
        ids: Vec<String>,
    },
}

#[derive(Args)]
struct ProveArgs {
    /// A `.lgp` file or `corpus:<id>`.
    problem: String,
    #[command(flatten)]
    prover: ProverArgs,
    #[command(flatten)]
    thf: ThfArgs,
}

/// Failures that end the run with a specific exit code.
enum Failure {
    Usage(anyhow::Error),
    Environment(anyhow::Error),
}

impl Failure {
    fn code(&self) -> u8 {
        match self {
            Failure::Usage(_) => 2,
            Failure::Environment(_) => 3,
        }
    }
}

fn usage(e: impl Into<anyhow::Error>) -> Failure {
    Failure::Usage(e.into())
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(c) => c,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { 2 } else { 0 });
        }
    };
    match run(cli) {
        Ok(all_met) => ExitCode::from(if all_met { 0 } else { 1 }),
        Err(f) => {
            let (Failure::Usage(e) | Failure::Environment(e)) = &f;
            eprintln!("error: {e:#}");
            ExitCode::from(f.code())
        }
    }
}

/// `Ok(true)` when every expectation was met.
fn run(cli: Cli) -> Result<bool, Failure> {
    let cfg = match &cli.config {
        Some(p) => Config::load(p).map_err(usage)?,
        None => Config::default(),
    };
    match cli.command {
        Command::Embed(a) => embed(&cfg, a),
        Command::Check(a) => check(&cfg, a),
        Command::Corpus(CorpusCommand::List) => list(),
        Command::Corpus(CorpusCommand::Export { dir, thf }) => {
            let opts = thf_options(&cfg, &thf)?;
            let written = corpus::export_corpus(&dir, &opts).map_err(usage)?;
            eprintln!("wrote {} files to {}", written.len(), dir.display());
            Ok(true)
        }
        Command::Corpus(CorpusCommand::Run { bounds, prover, thf, ids }) => corpus_run(&cfg, bounds, prover, thf, ids),
        Command::Prove(a) => prove(&cfg, a),
    }
}

fn thf_options(cfg: &Config, a: &ThfArgs) -> Result<ThfOptions, Failure> {
    let mode = match (a.mode, &cfg.mode) {
        (Some(m), _) => m,
        (None, Some(m)) => m.parse().map_err(|e: String| usage(anyhow!(e)))?,
        (None, None) => EmitMode::Defined,
    };
    Ok(ThfOptions { mode, swap_types: a.swap_types, definitions_as_axioms: a.definitions_as_axioms })
}

/// Reads `corpus:<id>` or a `.lgp` file.
fn load_problem(arg: &str, logic: Option<&str>) -> Result<(Problem, Option<CorpusEntry>), Failure> {
    if let Some(id) = arg.strip_prefix("corpus:") {
        let entry = corpus::find(id).ok_or_else(|| usage(anyhow!("unknown corpus entry `{id}`")))?;
        return Ok((corpus::build(id).map_err(usage)?, Some(entry)));
    }
    let path = Path::new(arg);
    let text = std::fs::read_to_string(path).with_context(|| format!("cannot read {arg}")).map_err(usage)?;
    let name = path.file_stem().map_or("problem".into(), |s| s.to_string_lossy().into_owned());
    let src = parse_problem(&text, &name).map_err(|e| usage(anyhow!("{arg}:{e}")))?;
    if let Some(l) = logic {
        let want: Logic = l.parse().map_err(|_| usage(anyhow!("unknown logic `{l}`")))?;
        if want != src.logic {
            return Err(usage(anyhow!("{arg} declares logic {}, not {l}", src.logic.name())));
        }
    }
    let p = corpus::load(&src).map_err(|e| usage(anyhow!("{arg}: {e}")))?;
    Ok((p, None))
}

fn embed(cfg: &Config, a: EmbedArgs) -> Result<bool, Failure> {
    let (p, _) = load_problem(&a.problem, a.logic.as_deref())?;
    p.check().map_err(|e| usage(anyhow!("{}: {e}", a.problem)))?;
    let opts = thf_options(cfg, &a.thf)?;
    let text = emit_thf(&p, &opts).to_string();
    match &a.out {
        Some(out) => std::fs::write(out, &text).with_context(|| format!("cannot write {}", out.display())).map_err(usage)?,
        None => print!("{text}"),
    }
    eprintln!("{}: {} axioms and the conjecture have type $o", p.name, p.axioms.len());
    Ok(true)
}

fn bounds_for(cfg: &Config, a: &BoundArgs, entry: Option<&CorpusEntry>) -> Bounds {
    let mut b = entry.map_or_else(Bounds::default, |e| e.bounds.clone());
    let pick = |flag: Option<u64>, conf: Option<usize>, current: usize| flag.map(|v| v as usize).or(conf).unwrap_or(current);
    b.worlds = pick(a.max_worlds, cfg.max_worlds, b.worlds);
    b.individuals = pick(a.max_ind, cfg.max_ind, b.individuals);
    b.regions = pick(a.max_regions, cfg.max_regions, b.regions);
    b
}

fn jobs(cfg: &Config, a: &BoundArgs) -> usize {
    a.jobs.map(|j| j as usize).or(cfg.jobs).unwrap_or(1).max(1)
}

fn finite_consistent(expected: Expectation, refuted: bool) -> bool {
    match expected {
        Expectation::Theorem => !refuted,
        Expectation::CounterSatisfiable => refuted,
        Expectation::Unknown => true,
    }
}

fn check_one(p: &Problem, bounds: &Bounds, jobs: usize, witness_dir: Option<&Path>) -> Record {
    let start = Instant::now();
    let result = countermodel_search_with(p, bounds, &SearchOptions { jobs, ..Default::default() });
    let mut r = Record::new(&p.name, "check", p.expected);
    r.bounds = Some(bounds.clone());
    r.elapsed = start.elapsed().as_secs_f64();
    match result {
        Ok(BoundedVerdict::Refuted { model, world }) => {
            r.verdict = Some("Refuted".into());
            r.world = world;
            let text = witness_text(&model);
            if let Some(dir) = witness_dir {
                let path = dir.join(format!("{}.model.txt", p.name));
                match std::fs::create_dir_all(dir).and_then(|_| std::fs::write(&path, &text)) {
                    Ok(()) => r.witness_path = Some(path.display().to_string()),
                    Err(e) => r.error = Some(format!("cannot write {}: {e}", path.display())),
                }
            }
            r.witness = Some(text);
            r.consistent = finite_consistent(p.expected, true) && r.error.is_none();
        }
        Ok(BoundedVerdict::NoCountermodelUpToBound { .. }) => {
            r.verdict = Some("NoCountermodelUpToBound".into());
            r.consistent = finite_consistent(p.expected, false);
        }
        Err(e) => {
            r.verdict = Some("Error".into());
            r.error = Some(e.to_string());
            r.consistent = false;
        }
    }
    r
}

fn check(cfg: &Config, a: CheckArgs) -> Result<bool, Failure> {
    let (p, entry) = load_problem(&a.problem, None)?;
    let bounds = bounds_for(cfg, &a.bounds, entry.as_ref());
    let r = check_one(&p, &bounds, jobs(cfg, &a.bounds), a.witness_dir.as_deref());
    if let Some(w) = &r.witness {
        eprint!("countermodel for {}:\n{w}", p.name);
    }
    eprintln!("{}: {}", p.name, r.verdict.as_deref().unwrap_or("?"));
    let ok = r.consistent;
    let mut report = RunReport::default();
    report.push(r);
    report.write_records(&mut std::io::stdout().lock()).map_err(usage)?;
    Ok(ok)
}

fn list() -> Result<bool, Failure> {
    let entries = corpus::corpus_list();
    let mut out = std::io::stdout().lock();
    for e in &entries {
        let line = serde_json::json!({
            "id": e.id,
            "expected": e.expected.keyword(),
            "tptp": e.tptp,
            "source": match e.source { corpus::EntrySource::Text => "text", corpus::EntrySource::Builtin => "builtin" },
            "bounds": e.bounds,
            "summary": e.summary,
        });
        writeln!(out, "{line}").map_err(usage)?;
    }
    eprintln!("{} entries", entries.len());
    Ok(true)
}

fn prover_config(cfg: &Config, a: &ProverArgs) -> Result<ProverConfig, Failure> {
    let timeout = a.timeout.or(cfg.timeout).unwrap_or(60);
    let explicit = a.prover.as_deref().filter(|s| !s.is_empty()).or(cfg.prover.as_deref());
    let result = match explicit {
        Some(cmd) => {
            let name = cmd.split_whitespace().next().unwrap_or("prover");
            let name = Path::new(name).file_name().map_or(name.into(), |n| n.to_string_lossy().into_owned());
            ProverConfig::new(&name, cmd, timeout)
        }
        None => ProverConfig::from_env(timeout),
    };
    result.map_err(|e| match e {
        ProverError::NotConfigured => Failure::Environment(e.into()),
        e => usage(e),
    })
}

fn run_dir(cfg: &Config, a: &ProverArgs) -> PathBuf {
    a.run_dir
        .clone()
        .or_else(|| cfg.run_dir.as_ref().map(PathBuf::from))
        .unwrap_or_else(|| std::env::temp_dir().join("holembed-runs"))
}

fn prove_one(p: &Problem, pc: &ProverConfig, opts: &ThfOptions, dir: &Path, clean: bool) -> Result<Record, Failure> {
    let doc = emit_thf(p, opts);
    let res = run_prover(pc, &doc, dir).map_err(|e| match e {
        ProverError::Spawn { .. } => Failure::Environment(e.into()),
        e => usage(e),
    })?;
    if clean {
        let _ = std::fs::remove_file(&res.problem_file);
    }
    let mut r = Record::new(&p.name, "prove", p.expected);
    r.prover = Some(pc.name.clone());
    r.status = Some(res.status.to_string());
    r.elapsed = res.wall_seconds;
    r.consistent = !matches!(
        (&res.status, p.expected),
        (SzsStatus::Theorem, Expectation::CounterSatisfiable) | (SzsStatus::CounterSatisfiable, Expectation::Theorem)
    );
    Ok(r)
}

fn prove(cfg: &Config, a: ProveArgs) -> Result<bool, Failure> {
    let (p, _) = load_problem(&a.problem, None)?;
    let pc = prover_config(cfg, &a.prover)?;
    let r = prove_one(&p, &pc, &thf_options(cfg, &a.thf)?, &run_dir(cfg, &a.prover), a.prover.clean)?;
    eprintln!("{}: {} ({})", p.name, r.status.as_deref().unwrap_or("?"), pc.name);
    let ok = r.consistent;
    let mut report = RunReport::default();
    report.push(r);
    report.write_records(&mut std::io::stdout().lock()).map_err(usage)?;
    Ok(ok)
}

fn corpus_run(cfg: &Config, bounds: BoundArgs, prover: ProverArgs, thf: ThfArgs, ids: Vec<String>) -> Result<bool, Failure> {
    let mut entries = corpus::corpus_list();
    if !ids.is_empty() {
        for id in &ids {
            if !entries.iter().any(|e| &e.id == id) {
                return Err(usage(anyhow!("unknown corpus entry `{id}`")));
            }
        }
        entries.retain(|e| ids.contains(&e.id));
    }
    let pc = match prover.prover {
        Some(_) => Some(prover_config(cfg, &prover)?),
        None => None,
    };
    let opts = thf_options(cfg, &thf)?;
    let dir = run_dir(cfg, &prover);
    let workers = jobs(cfg, &bounds).min(entries.len().max(1));
    let next = AtomicUsize::new(0);
    type Slot = Option<Result<Vec<Record>, Failure>>;
    let results: Mutex<Vec<Slot>> = Mutex::new((0..entries.len()).map(|_| None).collect());
    std::thread::scope(|s| {
        for _ in 0..workers {
            s.spawn(|| loop {
                let i = next.fetch_add(1, Ordering::Relaxed);
                let Some(e) = entries.get(i) else { break };
                let out = (|| {
                    let p = corpus::build(&e.id).map_err(usage)?;
                    let mut recs = vec![check_one(&p, &bounds_for(cfg, &bounds, Some(e)), 1, None)];
                    if let Some(pc) = &pc {
                        let mut r = prove_one(&p, pc, &opts, &dir, prover.clean)?;
                        // A prover Theorem must not meet a finite countermodel.
                        if recs[0].verdict.as_deref() == Some("Refuted") && r.status.as_deref() == Some("Theorem") {
                            r.consistent = false;
                        }
                        recs.push(r);
                    }
                    Ok(recs)
                })();
                results.lock().expect("results lock")[i] = Some(out);
            });
        }
    });
    let mut report = RunReport::default();
    for r in results.into_inner().expect("results lock") {
        for rec in r.expect("every entry ran")? {
            report.push(rec);
        }
    }
    report.write_records(&mut std::io::stdout().lock()).map_err(usage)?;
    eprintln!("{}", report.summary());
    Ok(report.all_consistent())
}
