//! The `fragmerge` command line.
//!
//! [`run`] parses arguments, executes one subcommand and returns the exit
//! code with the text that would be printed. Exit codes: 0 on success, 1 on
//! a verified negative answer, 2 on usage or I/O errors.

pub mod render;
pub mod witness_dir;

use std::fs;
use std::path::{Path, PathBuf};
use std::time::Instant;

use anyhow::{bail, Context};
use clap::{Args, Parser, Subcommand, ValueEnum};
use serde::{Deserialize, Serialize};

use crate::distribute::{
    self, auto_witness, cap_cup_sweep, check_cap_cup_lemma, evidence_report, find_critical_pairs, search,
    DistributionTask, DistributionWitness, Mode, ReportConfig, SearchBounds, SearchOutcome, DEFAULT_NODE_BUDGET,
};
use crate::fragments::{closure, is_expressible, synthesize_kb, Fragment};
use crate::logic::{format_kb, parse_kb, parse_model_set, AtomUniverse, KnowledgeBase, ModelSet, Profile};
use crate::merge::{merge, MergeResult, MergeSpec};
use crate::metrics::{Aggregation, Distance};

pub use render::{render_matrix, MatrixView, Payload, WitnessView};

/// Environment variable overriding the default search node budget.
pub const NODE_BUDGET_ENV: &str = "FRAGMERGE_NODE_BUDGET";

#[derive(Debug, Parser, Serialize)]
#[command(
    name = "fragmerge",
    version,
    about = "Belief merging over Horn, Krom and 1CNF fragments"
)]
pub struct Cli {
    /// Emit a machine-readable JSON report instead of text.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub json: bool,

    /// Cap on worker threads used by searches.
    #[arg(long, global = true)]
    #[serde(skip)]
    pub jobs: Option<usize>,

    #[command(subcommand)]
    pub command: Command,
}

#[derive(Debug, Subcommand, Serialize)]
#[serde(tag = "command", rename_all = "kebab-case")]
pub enum Command {
    /// List the models of a KB.
    Models(ModelsArgs),
    /// Print the fragment closure of a model set.
    Closure(FragmentTargetArgs),
    /// Print `yes` if a model set is expressible in the fragment.
    Expressible(FragmentTargetArgs),
    /// Print a fragment KB whose models are exactly the given closed set.
    Synthesize(FragmentTargetArgs),
    /// Print the distance matrix of a profile against a constraint.
    Distances(DistancesArgs),
    /// Merge a profile under a constraint.
    Merge(MergeArgs),
    /// Build a fragment profile and constraint merging to a KB.
    Distribute(DistributeArgs),
    /// Re-run the merge stored in a witness directory.
    Verify(VerifyArgs),
    /// Exhaustive bounded search for a witness.
    Search(SearchArgs),
    /// List critical pairs of a model set.
    CriticalPairs(TargetOnlyArgs),
    /// Check the cap-cup identity on a 1CNF profile or on random ones.
    CheckLemma(CheckLemmaArgs),
    /// Evidence table for the summary of results.
    Report(ReportArgs),
}

#[derive(Debug, Args, Serialize)]
pub struct AtomsArg {
    /// Comma-separated atoms, in bit order.
    #[arg(long)]
    pub atoms: String,
}

#[derive(Debug, Args, Serialize)]
#[group(required = true, multiple = false)]
pub struct TargetSource {
    /// KB file whose models are the target.
    #[arg(long)]
    pub kb: Option<PathBuf>,
    /// Model-set file, one `{a,b}` per line.
    #[arg(long)]
    pub models: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct ModelsArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[arg(long)]
    pub kb: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct FragmentTargetArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[arg(long)]
    pub fragment: Fragment,
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetSource,
}

#[derive(Debug, Args, Serialize)]
pub struct TargetOnlyArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetSource,
}

#[derive(Debug, Args, Serialize)]
pub struct ProfileArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[arg(long)]
    pub distance: Distance,
    /// Profile KB files, in order.
    #[arg(long, num_args = 1.., required = true)]
    pub profile: Vec<PathBuf>,
    #[arg(long)]
    pub constraint: PathBuf,
    /// Column labels; defaults to K1, K2, ...
    #[arg(long, num_args = 1..)]
    pub labels: Vec<String>,
}

#[derive(Debug, Args, Serialize)]
pub struct DistancesArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub profile: ProfileArgs,
    /// Aggregation columns to show, in order.
    #[arg(long = "agg", value_delimiter = ',', default_value = "sum")]
    pub aggs: Vec<Aggregation>,
    /// Show per-base distances only.
    #[arg(long, conflicts_with = "aggs")]
    pub no_agg: bool,
}

#[derive(Debug, Args, Serialize)]
pub struct MergeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub profile: ProfileArgs,
    #[arg(long)]
    pub agg: Aggregation,
    #[arg(long)]
    pub show_matrix: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, ValueEnum, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Method {
    Auto,
    Drastic,
    Gmin,
    Krom,
    Horn2,
    Horn3,
    #[value(name = "1cnf-gmax")]
    #[serde(rename = "1cnf-gmax")]
    OneCnfGmax,
    Search,
}

#[derive(Debug, Args, Serialize)]
pub struct BoundsArgs {
    #[arg(long, default_value_t = 2)]
    pub max_len: usize,
    #[arg(long, default_value_t = 0)]
    pub fresh_atoms: usize,
    /// Cap on candidate profiles; overrides the environment default.
    #[arg(long)]
    pub node_budget: Option<u64>,
}

#[derive(Debug, Args, Serialize)]
pub struct DistributeArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[arg(long)]
    pub fragment: Fragment,
    #[arg(long)]
    pub distance: Distance,
    #[arg(long)]
    pub agg: Aggregation,
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetSource,
    #[arg(long, value_enum, default_value = "auto")]
    pub method: Method,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: BoundsArgs,
    /// Write the witness to this directory.
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct SearchArgs {
    #[command(flatten)]
    #[serde(flatten)]
    pub atoms: AtomsArg,
    #[arg(long)]
    pub fragment: Fragment,
    #[arg(long)]
    pub distance: Distance,
    #[arg(long, default_value = "sum")]
    pub agg: Aggregation,
    #[command(flatten)]
    #[serde(flatten)]
    pub target: TargetSource,
    #[arg(long, default_value = "distribute")]
    pub mode: Mode,
    #[command(flatten)]
    #[serde(flatten)]
    pub bounds: BoundsArgs,
    #[arg(long)]
    pub out: Option<PathBuf>,
}

#[derive(Debug, Args, Serialize)]
pub struct VerifyArgs {
    #[arg(long)]
    pub witness: PathBuf,
}

#[derive(Debug, Args, Serialize)]
pub struct CheckLemmaArgs {
    /// Explicit 1CNF profile; requires --atoms, --w1 and --w2.
    #[arg(long, num_args = 1.., requires_all = ["atoms", "w1", "w2"])]
    pub profile: Vec<PathBuf>,
    #[arg(long)]
    pub atoms: Option<String>,
    #[arg(long)]
    pub w1: Option<String>,
    #[arg(long)]
    pub w2: Option<String>,
    #[arg(long, default_value_t = 0)]
    pub seed: u64,
    /// Random profiles to generate.
    #[arg(long, default_value_t = 200)]
    pub profiles: usize,
    /// Random interpretation pairs per profile.
    #[arg(long, default_value_t = 50)]
    pub pairs: usize,
    #[arg(long, default_value_t = 6)]
    pub max_atoms: usize,
    #[arg(long, default_value_t = 4)]
    pub max_len: usize,
}

#[derive(Debug, Args, Serialize)]
pub struct ReportArgs {
    #[arg(long, default_value_t = 3)]
    pub max_atoms: usize,
    /// Profile-length bound for 1CNF searches.
    #[arg(long, default_value_t = 3)]
    pub one_cnf_len: usize,
    /// Profile-length bound for the other fragments.
    #[arg(long, default_value_t = 2)]
    pub max_len: usize,
    #[arg(long)]
    pub node_budget: Option<u64>,
}

/// Machine-readable record of one invocation.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
pub struct RunReport {
    /// The parsed subcommand and flags.
    pub inputs: serde_json::Value,
    pub payload: Payload,
    /// Construction tag, when the result carries one.
    pub provenance: Option<String>,
    pub bounds: Option<SearchBounds>,
    pub exit_code: i32,
    pub elapsed_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Eq)]
pub struct CliOutput {
    pub code: i32,
    pub stdout: String,
    pub stderr: String,
}

struct Outcome {
    payload: Payload,
    code: i32,
    provenance: Option<String>,
    bounds: Option<SearchBounds>,
}

impl Outcome {
    fn ok(payload: Payload) -> Self {
        Self {
            payload,
            code: 0,
            provenance: None,
            bounds: None,
        }
    }
}

/// Runs the command line `argv` (including the program name).
pub fn run<I, T>(argv: I) -> CliOutput
where
    I: IntoIterator<Item = T>,
    T: Into<std::ffi::OsString> + Clone,
{
    let cli = match Cli::try_parse_from(argv) {
        Ok(cli) => cli,
        Err(e) => {
            let text = e.render().to_string();
            return if e.use_stderr() {
                CliOutput {
                    code: 2,
                    stdout: String::new(),
                    stderr: text,
                }
            } else {
                CliOutput {
                    code: 0,
                    stdout: text,
                    stderr: String::new(),
                }
            };
        }
    };
    let start = Instant::now();
    let result = match cli.jobs {
        Some(n) => rayon::ThreadPoolBuilder::new()
            .num_threads(n.max(1))
            .build()
            .map_err(anyhow::Error::from)
            .and_then(|pool| pool.install(|| execute(&cli.command))),
        None => execute(&cli.command),
    };
    match result {
        Ok(out) => {
            let stdout = if cli.json {
                let report = RunReport {
                    inputs: serde_json::to_value(&cli.command).unwrap_or(serde_json::Value::Null),
                    payload: out.payload,
                    provenance: out.provenance,
                    bounds: out.bounds,
                    exit_code: out.code,
                    elapsed_ms: start.elapsed().as_secs_f64() * 1e3,
                };
                serde_json::to_string_pretty(&report).expect("report serializes") + "\n"
            } else {
                out.payload.render()
            };
            CliOutput {
                code: out.code,
                stdout,
                stderr: String::new(),
            }
        }
        Err(e) => CliOutput {
            code: 2,
            stdout: String::new(),
            stderr: format!("error: {}\n", format!("{e:#}").replace('\n', " ")),
        },
    }
}

fn read(path: &Path) -> anyhow::Result<String> {
    fs::read_to_string(path).with_context(|| format!("reading {}", path.display()))
}

fn universe(atoms: &str) -> anyhow::Result<AtomUniverse> {
    AtomUniverse::parse_list(atoms).context("in --atoms")
}

fn load_kb(path: &Path, u: &AtomUniverse) -> anyhow::Result<KnowledgeBase> {
    parse_kb(&read(path)?, u).with_context(|| format!("in {}", path.display()))
}

fn load_target(src: &TargetSource, u: &AtomUniverse) -> anyhow::Result<ModelSet> {
    match (&src.kb, &src.models) {
        (Some(p), _) => Ok(load_kb(p, u)?.models().clone()),
        (None, Some(p)) => parse_model_set(&read(p)?, u).with_context(|| format!("in {}", p.display())),
        (None, None) => bail!("one of --kb or --models is required"),
    }
}

fn node_budget(flag: Option<u64>) -> anyhow::Result<u64> {
    if let Some(b) = flag {
        return Ok(b);
    }
    match std::env::var(NODE_BUDGET_ENV) {
        Ok(v) => v
            .trim()
            .parse()
            .with_context(|| format!("{NODE_BUDGET_ENV} must be a non-negative integer, got {v:?}")),
        Err(_) => Ok(DEFAULT_NODE_BUDGET),
    }
}

fn load_profile(args: &ProfileArgs) -> anyhow::Result<(Profile, KnowledgeBase, Vec<String>)> {
    let u = universe(&args.atoms.atoms)?;
    let bases = args
        .profile
        .iter()
        .map(|p| load_kb(p, &u))
        .collect::<anyhow::Result<Vec<_>>>()?;
    let mu = load_kb(&args.constraint, &u)?;
    let labels = if args.labels.is_empty() {
        render::default_labels(bases.len())
    } else if args.labels.len() == bases.len() {
        args.labels.clone()
    } else {
        bail!(
            "--labels has {} entries for {} profile files",
            args.labels.len(),
            bases.len()
        );
    };
    Ok((Profile::new(bases)?, mu, labels))
}

fn witness_view(w: &DistributionWitness, spec: MergeSpec) -> anyhow::Result<WitnessView> {
    Ok(WitnessView {
        construction: w.construction.tag(),
        fragment: w.fragment.to_string(),
        universe: w.working_universe().names().to_vec(),
        fresh_atoms: w.fresh_atoms(),
        profile: w.profile.iter().map(format_kb).collect(),
        constraint: format_kb(&w.constraint),
        spec: spec.to_string(),
        verified: w.check(spec)?,
    })
}

fn witness_outcome(
    w: &DistributionWitness,
    spec: MergeSpec,
    bounds: Option<SearchBounds>,
    out: Option<&Path>,
) -> anyhow::Result<Outcome> {
    let view = witness_view(w, spec)?;
    if let Some(dir) = out {
        let mut stored = w.clone();
        if !stored.specs.contains(&spec) {
            stored.specs.push(spec);
        }
        witness_dir::write_witness(dir, &stored, bounds)?;
    }
    Ok(Outcome {
        code: if view.verified { 0 } else { 1 },
        provenance: Some(view.construction.clone()),
        payload: Payload::Witness { witness: view },
        bounds,
    })
}

fn search_outcome(task: &DistributionTask, out: Option<&Path>) -> anyhow::Result<Outcome> {
    match search(task)? {
        SearchOutcome::Found(w) => witness_outcome(&w, task.spec, Some(task.bounds), out),
        SearchOutcome::Exhausted(c) => Ok(Outcome {
            payload: Payload::Undistributable {
                max_profile_len: c.max_profile_len,
                max_fresh_atoms: c.max_fresh_atoms,
                candidates: c.candidates,
                complete: c.complete,
            },
            code: 1,
            provenance: Some("search".into()),
            bounds: Some(task.bounds),
        }),
    }
}

fn require_fragment(method: Method, fragment: Fragment, expected: Fragment) -> anyhow::Result<()> {
    if fragment != expected {
        bail!("--method {method:?} applies to --fragment {expected}, got {fragment}");
    }
    Ok(())
}

fn distribute_cmd(a: &DistributeArgs) -> anyhow::Result<Outcome> {
    let u = universe(&a.atoms.atoms)?;
    let target = load_target(&a.target, &u)?;
    let spec = MergeSpec::new(a.distance, a.agg);
    let bounds = SearchBounds {
        max_profile_len: a.bounds.max_len,
        max_fresh_atoms: a.bounds.fresh_atoms,
    };
    let task = DistributionTask::new(target.clone(), a.fragment, spec, Mode::Distribute, bounds)?
        .with_node_budget(node_budget(a.bounds.node_budget)?);
    let out = a.out.as_deref();
    let f = a.fragment;
    let w = match a.method {
        Method::Auto => match auto_witness(&target, f, spec)? {
            Some(w) if w.specs.contains(&spec) => w,
            _ => return search_outcome(&task, out),
        },
        Method::Search => return search_outcome(&task, out),
        Method::Drastic => distribute::distribute_drastic(&target, f)?,
        Method::Gmin => distribute::distribute_gmin_equidistant(&target, f, a.distance)?,
        Method::Krom => {
            require_fragment(a.method, f, Fragment::Krom)?;
            distribute::simplify_krom(&target)?
        }
        Method::Horn2 => {
            require_fragment(a.method, f, Fragment::Horn)?;
            distribute::simplify_horn_two_models(&target)?
        }
        Method::Horn3 => {
            require_fragment(a.method, f, Fragment::Horn)?;
            distribute::distribute_horn_three_models(&target)?
        }
        Method::OneCnfGmax => {
            require_fragment(a.method, f, Fragment::OneCnf)?;
            distribute::distribute_1cnf_gmax_two_models(&target)?
        }
    };
    witness_outcome(&w, spec, None, out)
}

fn search_cmd(a: &SearchArgs) -> anyhow::Result<Outcome> {
    let u = universe(&a.atoms.atoms)?;
    let target = load_target(&a.target, &u)?;
    let bounds = SearchBounds {
        max_profile_len: a.bounds.max_len,
        max_fresh_atoms: a.bounds.fresh_atoms,
    };
    let task = DistributionTask::new(target, a.fragment, MergeSpec::new(a.distance, a.agg), a.mode, bounds)?
        .with_node_budget(node_budget(a.bounds.node_budget)?);
    search_outcome(&task, a.out.as_deref())
}

fn verify_cmd(a: &VerifyArgs) -> anyhow::Result<Outcome> {
    let (w, meta) = witness_dir::read_witness(&a.witness)?;
    let checks = w
        .specs
        .iter()
        .map(|&spec| {
            Ok(render::SpecCheck {
                spec: spec.to_string(),
                equivalent: w.check(spec)?,
            })
        })
        .collect::<anyhow::Result<Vec<_>>>()?;
    Ok(Outcome {
        code: if w.verified { 0 } else { 1 },
        provenance: Some(meta.construction.clone()),
        bounds: meta.bounds,
        payload: Payload::Verify {
            construction: meta.construction,
            checks,
        },
    })
}

fn check_lemma_cmd(a: &CheckLemmaArgs) -> anyhow::Result<Outcome> {
    let (seed, cases, failures) = if a.profile.is_empty() {
        let sweep = cap_cup_sweep(a.seed, a.profiles, a.pairs, a.max_atoms, a.max_len)?;
        let failures = sweep
            .failures
            .iter()
            .map(|f| {
                let u = f.profile.universe();
                let kbs: Vec<String> = f.profile.iter().map(|kb| kb.models().to_string()).collect();
                format!("{} {} in ({})", u.format(f.w1), u.format(f.w2), kbs.join(", "))
            })
            .collect();
        (Some(a.seed), sweep.cases, failures)
    } else {
        let u = universe(a.atoms.as_deref().unwrap_or_default())?;
        let bases = a
            .profile
            .iter()
            .map(|p| load_kb(p, &u))
            .collect::<anyhow::Result<Vec<_>>>()?;
        let profile = Profile::new(bases)?;
        let w1 = u.parse_interpretation(a.w1.as_deref().unwrap_or_default())?;
        let w2 = u.parse_interpretation(a.w2.as_deref().unwrap_or_default())?;
        let failures = if check_cap_cup_lemma(&profile, w1, w2)? {
            vec![]
        } else {
            vec![format!("{} {}", u.format(w1), u.format(w2))]
        };
        (None, 1, failures)
    };
    Ok(Outcome {
        code: if failures.is_empty() { 0 } else { 1 },
        payload: Payload::CapCup { seed, cases, failures },
        provenance: None,
        bounds: None,
    })
}

fn execute(command: &Command) -> anyhow::Result<Outcome> {
    match command {
        Command::Models(a) => {
            let u = universe(&a.atoms.atoms)?;
            let kb = load_kb(&a.kb, &u)?;
            Ok(Outcome::ok(Payload::Models {
                models: kb.models().format_members(),
            }))
        }
        Command::Closure(a) => {
            let u = universe(&a.atoms.atoms)?;
            let t = load_target(&a.target, &u)?;
            Ok(Outcome::ok(Payload::Models {
                models: closure(&t, a.fragment).format_members(),
            }))
        }
        Command::Expressible(a) => {
            let u = universe(&a.atoms.atoms)?;
            let t = load_target(&a.target, &u)?;
            let yes = is_expressible(&t, a.fragment);
            Ok(Outcome {
                code: if yes { 0 } else { 1 },
                ..Outcome::ok(Payload::Expressible {
                    fragment: a.fragment.to_string(),
                    expressible: yes,
                })
            })
        }
        Command::Synthesize(a) => {
            let u = universe(&a.atoms.atoms)?;
            let t = load_target(&a.target, &u)?;
            let kb = synthesize_kb(&t, a.fragment)?;
            Ok(Outcome::ok(Payload::Kb { text: format_kb(&kb) }))
        }
        Command::Distances(a) => {
            let (profile, mu, labels) = load_profile(&a.profile)?;
            let results = a
                .aggs
                .iter()
                .map(|&agg| merge(&profile, &mu, MergeSpec::new(a.profile.distance, agg)))
                .collect::<Result<Vec<MergeResult>, _>>()?;
            let mut matrix = MatrixView::from_results(&results, labels);
            if a.no_agg {
                matrix = matrix.without_aggregates();
            }
            Ok(Outcome::ok(Payload::Matrix { matrix }))
        }
        Command::Merge(a) => {
            let (profile, mu, labels) = load_profile(&a.profile)?;
            let r = merge(&profile, &mu, MergeSpec::new(a.profile.distance, a.agg))?;
            let matrix = a
                .show_matrix
                .then(|| MatrixView::from_results(std::slice::from_ref(&r), labels));
            Ok(Outcome::ok(Payload::Merge {
                models: r.models.format_members(),
                matrix,
            }))
        }
        Command::Distribute(a) => distribute_cmd(a),
        Command::Verify(a) => verify_cmd(a),
        Command::Search(a) => search_cmd(a),
        Command::CriticalPairs(a) => {
            let u = universe(&a.atoms.atoms)?;
            let t = load_target(&a.target, &u)?;
            let pairs = find_critical_pairs(&t)
                .into_iter()
                .map(|p| render::CriticalPairView {
                    w1: u.format(p.w1),
                    w2: u.format(p.w2),
                    case: p.case.number(),
                })
                .collect();
            Ok(Outcome::ok(Payload::CriticalPairs { pairs }))
        }
        Command::CheckLemma(a) => check_lemma_cmd(a),
        Command::Report(a) => {
            let config = ReportConfig {
                max_atoms: a.max_atoms,
                one_cnf_len: a.one_cnf_len,
                other_len: a.max_len,
                node_budget: node_budget(a.node_budget)?,
            };
            if !(1..=4).contains(&config.max_atoms) {
                bail!("--max-atoms must be between 1 and 4");
            }
            let report = evidence_report(config)?;
            Ok(Outcome {
                code: if report.consistent() { 0 } else { 1 },
                ..Outcome::ok(Payload::Report { report })
            })
        }
    }
}
