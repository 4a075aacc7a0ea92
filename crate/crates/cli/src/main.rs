use std::fs;
use std::io::Write;
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use clap::{Parser, Subcommand, ValueEnum};
use poset_queues::constructions::{gen_counterexample, gen_general, gen_lazy_lb, gen_mru_lb, lift};
use poset_queues::extensions::{lazy_extension, mru_extension, random_extension};
use poset_queues::rainbow::{max_rainbow, queue_assignment};
use poset_queues::search::PrefixConstraint;
use poset_queues::{
    ChainDecomposition, ConstructionBundle, LinearExtension, Poset, PosetError, QueueLayout, SearchOptions, TieBreak,
};
use poset_queues_cli::parallel::{queue_number_parallel, Clock};
use poset_queues_cli::verify::{self, StretchBudget, StretchStatus};
use poset_queues_cli::{export_dot, parse_document, serialize_document, DocumentError, PosetDocument};
use serde_json::{json, Value};
use sha2::{Digest, Sha256};

const TOOL: &str = env!("CARGO_PKG_NAME");
const VERSION: &str = env!("CARGO_PKG_VERSION");

const EXIT_FAILED: u8 = 1;
const EXIT_USAGE: u8 = 2;
const EXIT_BUDGET: u8 = 3;

#[derive(Parser)]
#[command(name = "poset-queues", version, about = "Queue layouts of posets")]
struct Cli {
    /// Print tables instead of JSON.
    #[arg(long, global = true)]
    human: bool,
    /// Worker threads for exact searches.
    #[arg(long, global = true, env = "POSET_QUEUES_JOBS", default_value_t = 1)]
    jobs: usize,
    #[command(subcommand)]
    command: Command,
}

#[derive(Clone, Copy, ValueEnum)]
enum StrategyArg {
    Lazy,
    Mru,
    Random,
}

#[derive(Clone, Copy, ValueEnum)]
enum FamilyArg {
    General,
    LazyLb,
    MruLb,
    Counterexample,
    Lifted,
}

#[derive(Clone, Copy, ValueEnum)]
enum Level {
    Quick,
    Full,
}

#[derive(Subcommand)]
enum Command {
    /// Size, width, chains and strategy rainbows of a poset.
    Analyze { file: PathBuf },
    /// Builds a linear extension with a strategy.
    Extend {
        file: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        /// Seed for random extensions and random tie-breaks; without it lazy
        /// and MRU break ties by smallest index.
        #[arg(long)]
        seed: Option<u64>,
        /// JSON list of chains (lists of element names).
        #[arg(long)]
        chains: Option<PathBuf>,
    },
    /// Maximum rainbow of a given order.
    Rainbow {
        file: PathBuf,
        /// JSON list of element names.
        #[arg(long)]
        order: PathBuf,
    },
    /// Queue layout of a strategy's extension.
    Layout {
        file: PathBuf,
        #[arg(long, value_enum)]
        strategy: StrategyArg,
        #[arg(long)]
        seed: Option<u64>,
        /// Also write a Graphviz rendering of the layout.
        #[arg(long)]
        dot: Option<PathBuf>,
    },
    /// Writes a poset of one of the extremal families.
    Generate {
        #[arg(long, value_enum)]
        family: FamilyArg,
        #[arg(long)]
        w: Option<usize>,
        #[arg(long)]
        p: Option<usize>,
        #[arg(long)]
        q: Option<usize>,
        #[arg(long)]
        tilde: bool,
        /// Output file; without it the document is embedded in the report.
        #[arg(short, long)]
        output: Option<PathBuf>,
    },
    /// Exact queue number by branch and bound.
    QnExact {
        file: PathBuf,
        /// Only look for layouts with fewer than K queues.
        #[arg(long)]
        upper: Option<usize>,
        /// Extra precedence `u,v`: u before v. Repeatable.
        #[arg(long)]
        constraint: Vec<String>,
        #[arg(long)]
        time_budget: Option<f64>,
        #[arg(long)]
        node_budget: Option<u64>,
        /// Progress lines on stderr.
        #[arg(long)]
        progress: bool,
    },
    /// Runs the reproduction suite.
    VerifyPaper {
        #[arg(long, value_enum, default_value = "quick")]
        level: Level,
        /// Per stretch check, in seconds (full level).
        #[arg(long, default_value_t = 600.0)]
        time_budget: f64,
        #[arg(long)]
        node_budget: Option<u64>,
        #[arg(long)]
        progress: bool,
    },
}

struct Failure {
    code: u8,
    kind: &'static str,
    message: String,
}

fn usage(kind: &'static str, message: impl ToString) -> Failure {
    Failure {
        code: EXIT_USAGE,
        kind,
        message: message.to_string(),
    }
}

/// Result payload, human rendering and exit code of a command.
struct Report {
    result: Value,
    human: String,
    code: u8,
}

/// Hashes every input file in order, each prefixed by its length.
struct Inputs {
    hasher: Sha256,
    any: bool,
}

impl Inputs {
    fn new() -> Self {
        Inputs {
            hasher: Sha256::new(),
            any: false,
        }
    }

    fn read(&mut self, path: &Path) -> Result<Vec<u8>, Failure> {
        let bytes = fs::read(path).map_err(|e| usage("Io", format!("{}: {e}", path.display())))?;
        self.hasher.update((bytes.len() as u64).to_le_bytes());
        self.hasher.update(&bytes);
        self.any = true;
        Ok(bytes)
    }

    /// Digest of the inputs, or of the arguments when no file was read.
    fn digest(self, args: &[String]) -> String {
        let hasher = if self.any {
            self.hasher
        } else {
            let mut h = Sha256::new();
            for a in args {
                h.update(a.as_bytes());
                h.update([0]);
            }
            h
        };
        format!("sha256:{}", hex::encode(hasher.finalize()))
    }

    fn document(&mut self, path: &Path) -> Result<(PosetDocument, Poset, Option<ChainDecomposition>), Failure> {
        let bytes = self.read(path)?;
        let doc = parse_document(&bytes).map_err(|e| usage("SchemaError", e))?;
        let (poset, chains) = doc.to_poset().map_err(|e| match &e {
            DocumentError::Schema(_) => usage("SchemaError", &e),
            DocumentError::Poset(p) => usage(poset_error_kind(p), &e),
        })?;
        Ok((doc, poset, chains))
    }

    fn names<T: serde::de::DeserializeOwned>(&mut self, path: &Path) -> Result<T, Failure> {
        let bytes = self.read(path)?;
        serde_json::from_slice(&bytes).map_err(|e| usage("SchemaError", format!("{}: {e}", path.display())))
    }
}

fn poset_error_kind(e: &PosetError) -> &'static str {
    match e {
        PosetError::Cycle(_) => "Cycle",
        PosetError::UnknownElement(_) => "UnknownElement",
        PosetError::DuplicateElement(_) => "DuplicateElement",
        PosetError::NotAPermutation => "NotAPermutation",
        PosetError::NotALinearExtension { .. } => "NotALinearExtension",
        PosetError::InvalidDecomposition(_) => "InvalidDecomposition",
    }
}

fn edge_names<'a>(p: &'a Poset, edges: &[(usize, usize)]) -> Vec<[&'a str; 2]> {
    edges.iter().map(|&(u, v)| [p.name(u), p.name(v)]).collect()
}

fn layout_json(p: &Poset, l: &QueueLayout) -> Value {
    let edges: Vec<Value> = l
        .edges
        .iter()
        .zip(&l.queue_of)
        .map(|(&(u, v), &q)| json!({"edge": [p.name(u), p.name(v)], "queue": q}))
        .collect();
    json!({
        "queue_count": l.queue_count,
        "extension": l.extension.names(p),
        "edges": edges,
    })
}

fn pick_chains(p: &Poset, given: Option<ChainDecomposition>) -> ChainDecomposition {
    given.unwrap_or_else(|| p.chain_decomposition())
}

fn run_strategy(
    p: &Poset,
    chains: &ChainDecomposition,
    strategy: StrategyArg,
    seed: Option<u64>,
) -> Result<LinearExtension, Failure> {
    let tb = seed.map_or(TieBreak::MinIndex, TieBreak::SeededRandom);
    let ext = match strategy {
        StrategyArg::Lazy => lazy_extension(p, chains, &tb).map(|(e, _)| e),
        StrategyArg::Mru => mru_extension(p, chains, &tb).map(|(e, _)| e),
        StrategyArg::Random => Ok(random_extension(p, seed.unwrap_or(0))),
    };
    ext.map_err(|e| usage("InvalidDecomposition", e))
}

fn strategy_name(s: StrategyArg) -> &'static str {
    match s {
        StrategyArg::Lazy => "lazy",
        StrategyArg::Mru => "mru",
        StrategyArg::Random => "random",
    }
}

fn analyze(inputs: &mut Inputs, file: &Path) -> Result<Report, Failure> {
    let (_, p, given) = inputs.document(file)?;
    let from_document = given.is_some();
    let chains = pick_chains(&p, given);
    let rainbow_of = |s| run_strategy(&p, &chains, s, None).map(|e| max_rainbow(&e, p.cover_edges()).0);
    let (lazy, mru) = (rainbow_of(StrategyArg::Lazy)?, rainbow_of(StrategyArg::Mru)?);
    let chain_names: Vec<Vec<&str>> = chains.chains().iter().map(|c| c.iter().map(|&v| p.name(v)).collect()).collect();
    let human = format!(
        "elements          {}\ncover edges       {}\nwidth             {}\nchains            {}{}\nlazy rainbow      {lazy}\nMRU rainbow       {mru}\n",
        p.len(),
        p.cover_edges().len(),
        p.width(),
        chains.len(),
        if from_document { " (from document)" } else { "" },
    );
    Ok(Report {
        result: json!({
            "elements": p.len(),
            "cover_edges": p.cover_edges().len(),
            "width": p.width(),
            "redundant_relations_dropped": p.had_redundant_relations(),
            "chains": chain_names,
            "chains_from_document": from_document,
            "lazy_rainbow": lazy,
            "mru_rainbow": mru,
        }),
        human,
        code: 0,
    })
}

fn extend(
    inputs: &mut Inputs,
    file: &Path,
    strategy: StrategyArg,
    seed: Option<u64>,
    chains_file: Option<&Path>,
) -> Result<Report, Failure> {
    let (_, p, given) = inputs.document(file)?;
    let given = match chains_file {
        Some(path) => {
            let names: Vec<Vec<String>> = inputs.names(path)?;
            Some(ChainDecomposition::from_names(&p, &names).map_err(|e| usage("InvalidDecomposition", e))?)
        }
        None => given,
    };
    let chains = pick_chains(&p, given);
    let ext = run_strategy(&p, &chains, strategy, seed)?;
    let (k, _) = max_rainbow(&ext, p.cover_edges());
    let order = ext.names(&p);
    Ok(Report {
        human: format!("{} extension (rainbow {k}):\n{}\n", strategy_name(strategy), order.join(" ")),
        result: json!({
            "strategy": strategy_name(strategy),
            "seed": seed,
            "extension": order,
            "max_rainbow": k,
        }),
        code: 0,
    })
}

fn rainbow(inputs: &mut Inputs, file: &Path, order_file: &Path) -> Result<Report, Failure> {
    let (_, p, _) = inputs.document(file)?;
    let order: Vec<String> = inputs.names(order_file)?;
    let ext = LinearExtension::from_names(&p, &order).map_err(|e| usage(poset_error_kind(&e), &e))?;
    let (k, cert) = max_rainbow(&ext, p.cover_edges());
    let edges = edge_names(&p, &cert.edges);
    let human = format!(
        "max rainbow {k}\n{}\n",
        edges.iter().map(|[u, v]| format!("  {u} -> {v}")).collect::<Vec<_>>().join("\n")
    );
    Ok(Report {
        result: json!({"max_rainbow": k, "certificate": edges}),
        human,
        code: 0,
    })
}

fn layout(
    inputs: &mut Inputs,
    file: &Path,
    strategy: StrategyArg,
    seed: Option<u64>,
    dot: Option<&Path>,
) -> Result<Report, Failure> {
    let (_, p, given) = inputs.document(file)?;
    let chains = pick_chains(&p, given);
    let ext = run_strategy(&p, &chains, strategy, seed)?;
    let l = queue_assignment(&ext, p.cover_edges());
    if let Some(path) = dot {
        fs::write(path, export_dot(&p, Some(&l))).map_err(|e| usage("Io", format!("{}: {e}", path.display())))?;
    }
    let mut result = layout_json(&p, &l);
    result["strategy"] = strategy_name(strategy).into();
    if let Some(path) = dot {
        result["dot"] = path.display().to_string().into();
    }
    Ok(Report {
        human: format!("{} layout: {} queues\n", strategy_name(strategy), l.queue_count),
        result,
        code: 0,
    })
}

fn generate(
    family: FamilyArg,
    w: Option<usize>,
    pq: (Option<usize>, Option<usize>),
    tilde: bool,
    output: Option<&Path>,
) -> Result<Report, Failure> {
    let need_w = || w.ok_or_else(|| usage("Usage", "this family needs --w"));
    let build = |r: Result<ConstructionBundle, poset_queues::ConstructionError>| {
        r.map_err(|e| usage("InvalidParameters", e))
    };
    let bundle = match (family, pq) {
        (FamilyArg::General, _) => build(gen_general(need_w()?))?,
        (FamilyArg::LazyLb, _) => build(gen_lazy_lb(need_w()?))?,
        (FamilyArg::MruLb, _) => build(gen_mru_lb(need_w()?))?,
        (FamilyArg::Counterexample, (Some(p), Some(q))) => build(gen_counterexample(p, q, tilde))?,
        (FamilyArg::Counterexample, _) => return Err(usage("Usage", "counterexample needs --p and --q")),
        (FamilyArg::Lifted, (Some(p), Some(q))) => {
            let base = build(gen_counterexample(p, q, tilde))?;
            build(lift(&base.poset, Some(&base.chains)))?
        }
        (FamilyArg::Lifted, (None, None)) => {
            let base = build(gen_lazy_lb(need_w()?))?;
            build(lift(&base.poset, Some(&base.chains)))?
        }
        (FamilyArg::Lifted, _) => return Err(usage("Usage", "lifted needs both --p and --q, or --w")),
    };
    let doc = PosetDocument::from_bundle(&bundle);
    let bytes = serialize_document(&doc);
    let human = format!(
        "{}: {} elements, {} cover edges, width {}\n",
        bundle.family.as_str(),
        bundle.poset.len(),
        bundle.poset.cover_edges().len(),
        bundle.chains.len()
    );
    let result = match output {
        Some(path) => {
            fs::write(path, &bytes).map_err(|e| usage("Io", format!("{}: {e}", path.display())))?;
            json!({
                "family": bundle.family.as_str(),
                "elements": bundle.poset.len(),
                "output": path.display().to_string(),
                "output_digest": format!("sha256:{}", hex::encode(Sha256::digest(&bytes))),
            })
        }
        None => json!({
            "family": bundle.family.as_str(),
            "elements": bundle.poset.len(),
            "document": serde_json::from_slice::<Value>(&bytes).expect("serializer emits JSON"),
        }),
    };
    Ok(Report { result, human, code: 0 })
}

fn seconds(s: f64) -> Result<Duration, Failure> {
    Duration::try_from_secs_f64(s).map_err(|_| usage("Usage", format!("invalid time budget {s}")))
}

#[allow(clippy::too_many_arguments)]
fn qn_exact(
    inputs: &mut Inputs,
    file: &Path,
    upper: Option<usize>,
    constraint: &[String],
    time_budget: Option<f64>,
    node_budget: Option<u64>,
    progress: bool,
    jobs: usize,
) -> Result<Report, Failure> {
    let (_, p, _) = inputs.document(file)?;
    let mut pairs = Vec::new();
    for c in constraint {
        let (u, v) = c
            .split_once(',')
            .ok_or_else(|| usage("Usage", format!("constraint {c:?} is not of the form u,v")))?;
        let idx = |name: &str| {
            p.index_of(name.trim())
                .ok_or_else(|| usage("UnknownElement", format!("unknown element {name:?}")))
        };
        pairs.push((idx(u)?, idx(v)?));
    }
    let constraints = PrefixConstraint { pairs };
    let clock = Clock::new(progress);
    let opts = SearchOptions {
        time_budget: time_budget.map(seconds).transpose()?,
        node_budget,
        initial_upper: upper,
        constraints: (!constraints.pairs.is_empty()).then_some(&constraints),
        control: Some(&clock),
        ..SearchOptions::default()
    };
    let r = queue_number_parallel(&p, &opts, jobs.max(1)).map_err(|e| usage("InconsistentConstraint", e))?;
    // with --upper, an exhausted search that found nothing below K proves qn >= K
    let below_upper = upper.is_some_and(|k| r.exhausted && r.upper_bound >= k);
    let settled = r.proven || below_upper;
    let mut result = json!({
        "queue_number": r.proven.then_some(r.upper_bound),
        "lower_bound": r.lower_bound,
        "upper_bound": r.upper_bound,
        "proven": r.proven,
        "exhausted": r.exhausted,
        "explored": r.explored,
        "elapsed_ms": clock.elapsed_ms(),
        "jobs": jobs.max(1),
    });
    if let Some(l) = &r.certificate {
        result["certificate"] = layout_json(&p, l);
    }
    let human = if r.proven {
        format!("queue number {} (proven, {} nodes)\n", r.upper_bound, r.explored)
    } else {
        format!(
            "queue number in [{}, {}] ({}, {} nodes)\n",
            r.lower_bound,
            r.upper_bound,
            if r.exhausted { "search space exhausted" } else { "budget exhausted" },
            r.explored
        )
    };
    Ok(Report {
        result,
        human,
        code: if settled { 0 } else { EXIT_BUDGET },
    })
}

fn verify_paper(
    level: Level,
    time_budget: f64,
    node_budget: Option<u64>,
    progress: bool,
    jobs: usize,
) -> Result<Report, Failure> {
    let budget = StretchBudget {
        time: Some(seconds(time_budget)?),
        nodes: node_budget,
        jobs: jobs.max(1),
        verbose: progress,
    };
    let mut human = String::new();
    let mut criteria = Vec::new();
    for id in 1..=verify::CRITERIA {
        let r = verify::run_criterion(id);
        if progress {
            eprintln!("criterion {id}: {}", if r.passed { "pass" } else { "FAIL" });
        }
        human.push_str(&format!(
            "[{}] {:>2}. {} ({} ms): {}\n",
            if r.passed { "PASS" } else { "FAIL" },
            r.id,
            r.name,
            r.elapsed_ms,
            r.detail
        ));
        criteria.push(r);
    }
    let stretch = match level {
        Level::Quick => Vec::new(),
        Level::Full => verify::run_stretch(&budget),
    };
    for s in &stretch {
        human.push_str(&format!(
            "[{:?}] {} >= {}: bounds [{}, {}], {} nodes, {} ms\n",
            s.status, s.name, s.claimed, s.lower_bound, s.upper_bound, s.explored, s.elapsed_ms
        ));
    }
    let failed = criteria.iter().any(|c| !c.passed) || stretch.iter().any(|s| s.status == StretchStatus::Refuted);
    let exhausted = stretch.iter().any(|s| s.status == StretchStatus::Exhausted);
    let code = if failed {
        EXIT_FAILED
    } else if exhausted {
        EXIT_BUDGET
    } else {
        0
    };
    Ok(Report {
        result: json!({
            "level": match level { Level::Quick => "quick", Level::Full => "full" },
            "passed": !failed,
            "criteria": criteria,
            "stretch": stretch,
        }),
        human,
        code,
    })
}

fn dispatch(cli: &Cli, inputs: &mut Inputs) -> Result<Report, Failure> {
    match &cli.command {
        Command::Analyze { file } => analyze(inputs, file),
        Command::Extend { file, strategy, seed, chains } => extend(inputs, file, *strategy, *seed, chains.as_deref()),
        Command::Rainbow { file, order } => rainbow(inputs, file, order),
        Command::Layout { file, strategy, seed, dot } => layout(inputs, file, *strategy, *seed, dot.as_deref()),
        Command::Generate { family, w, p, q, tilde, output } => generate(*family, *w, (*p, *q), *tilde, output.as_deref()),
        Command::QnExact { file, upper, constraint, time_budget, node_budget, progress } => qn_exact(
            inputs,
            file,
            *upper,
            constraint,
            *time_budget,
            *node_budget,
            *progress,
            cli.jobs,
        ),
        Command::VerifyPaper { level, time_budget, node_budget, progress } => {
            verify_paper(*level, *time_budget, *node_budget, *progress, cli.jobs)
        }
    }
}

fn command_name(c: &Command) -> &'static str {
    match c {
        Command::Analyze { .. } => "analyze",
        Command::Extend { .. } => "extend",
        Command::Rainbow { .. } => "rainbow",
        Command::Layout { .. } => "layout",
        Command::Generate { .. } => "generate",
        Command::QnExact { .. } => "qn-exact",
        Command::VerifyPaper { .. } => "verify-paper",
    }
}

/// Writes to stdout, ignoring a closed pipe.
fn emit_text(text: &str) {
    let _ = std::io::stdout().lock().write_all(text.as_bytes());
}

fn emit(value: &Value) {
    emit_text(&format!("{}\n", serde_json::to_string_pretty(value).expect("values serialize")));
}

fn main() -> ExitCode {
    let args: Vec<String> = std::env::args().collect();
    let cli = match Cli::try_parse_from(&args) {
        Ok(cli) => cli,
        Err(e) if !e.use_stderr() => {
            // --help and --version
            let _ = e.print();
            return ExitCode::SUCCESS;
        }
        Err(e) => {
            emit(&json!({
                "tool": TOOL,
                "version": VERSION,
                "input_digest": Inputs::new().digest(&args[1..]),
                "error": {"kind": "Usage", "message": e.to_string()},
            }));
            return ExitCode::from(EXIT_USAGE);
        }
    };
    let mut inputs = Inputs::new();
    let outcome = dispatch(&cli, &mut inputs);
    let digest = inputs.digest(&args[1..]);
    let mut envelope = json!({
        "tool": TOOL,
        "version": VERSION,
        "command": command_name(&cli.command),
        "input_digest": digest,
    });
    let code = match outcome {
        Ok(report) => {
            if cli.human {
                emit_text(&report.human);
                return ExitCode::from(report.code);
            }
            envelope["result"] = report.result;
            report.code
        }
        Err(f) => {
            if cli.human {
                eprintln!("error: {}", f.message);
                return ExitCode::from(f.code);
            }
            envelope["error"] = json!({"kind": f.kind, "message": f.message});
            f.code
        }
    };
    emit(&envelope);
    ExitCode::from(code)
}
