//! `nminfpe` command-line tool.
//!
//! Exit codes: 0 success, 1 runtime error (I/O, malformed input), 2 no
//! nontrivial fixed point found (or, for `validate`, the configuration is
//! not one), 3 time budget exhausted, 64 usage error.

use std::fs::{self, File};
use std::io::{self, BufReader, Write};
use std::path::{Path, PathBuf};
use std::process::ExitCode;
use std::time::Duration;

use anyhow::{bail, Context, Result};
use clap::{Args, Parser, Subcommand, ValueEnum};
use nminfpe::bench::{
    assign_random_thresholds, assign_uniform_thresholds, generate_gnp, run_experiment, run_method, BenchMethod, ExperimentSpec, Status,
};
use nminfpe::io::{format_configuration, read_configuration, read_edge_list, read_system, write_edge_list, write_thresholds, VertexMap};
use nminfpe::reductions::{ReductionSpec, DEFAULT_BETA_CAP};
use nminfpe::{
    branch_and_bound_opt, brute_force_opt, build_clique_reduction, build_mvc_reduction, detect_case, fpt_solve, is_fixed_point,
    is_nontrivial_fixed_point, solve_complete, solve_constant1, solve_dag, Configuration, Epsilon, ExactOutcome, IlpModel, SpecialCase,
    ThresholdSystem,
};

const EXIT_INFEASIBLE: u8 = 2;
const EXIT_TIMEOUT: u8 = 3;
const EXIT_USAGE: u8 = 64;

#[derive(Parser)]
#[command(name = "nminfpe", version, about = "Minimum nontrivial fixed points of threshold systems")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Args)]
struct SystemArgs {
    /// Edge list: two vertex tokens per line.
    #[arg(long)]
    edges: PathBuf,
    /// Threshold file: `vertex threshold` per line.
    #[arg(long)]
    thresholds: PathBuf,
    /// Treat each edge `u v` as an arc from u to v.
    #[arg(long)]
    directed: bool,
}

#[derive(Subcommand)]
enum Command {
    /// Run one method on one system and print the state-1 vertices.
    Solve {
        #[command(flatten)]
        system: SystemArgs,
        /// greedy_full, greedy_np, greedy_thresh, greedy_sub, degdis, random,
        /// pagerank, distance, exact, brute, fpt or special.
        #[arg(long, default_value = "greedy_np")]
        method: String,
        /// Seed for the random baseline.
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, default_value_t = 60_000)]
        budget_ms: u64,
        /// Write the configuration here instead of stdout.
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Exact optimum with a JSON certificate.
    Exact {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long, default_value_t = 60_000)]
        budget_ms: u64,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Write the integer program in LP format.
    ExportLp {
        #[command(flatten)]
        system: SystemArgs,
        #[arg(long)]
        out: Option<PathBuf>,
    },
    /// Generate instances.
    Gen {
        #[command(subcommand)]
        kind: GenKind,
    },
    /// Run an experiment and emit a ratio report.
    Bench {
        /// Flat `key = value` experiment file.
        #[arg(long)]
        config: Option<PathBuf>,
        /// Extra `key=value` settings, applied after the file.
        #[arg(long = "set", value_name = "KEY=VALUE")]
        set: Vec<String>,
        /// Canonical CSV destination (stdout when omitted).
        #[arg(long)]
        csv: Option<PathBuf>,
        /// JSON report destination, including runtimes and summaries.
        #[arg(long)]
        json: Option<PathBuf>,
        /// Include the runtime column in the CSV (not byte-reproducible).
        #[arg(long)]
        timed: bool,
    },
    /// Check a configuration file against a system.
    Validate {
        #[command(flatten)]
        system: SystemArgs,
        /// State-1 vertex tokens, one per line.
        #[arg(long)]
        configuration: PathBuf,
    },
}

#[derive(Clone, Copy, ValueEnum)]
enum TauMode {
    Random,
    Uniform,
}

#[derive(Subcommand)]
enum GenKind {
    /// Erdős–Rényi graph with generated thresholds.
    Gnp {
        #[arg(long)]
        n: usize,
        #[arg(long)]
        p: f64,
        #[arg(long, default_value_t = 0)]
        seed: u64,
        #[arg(long, value_enum, default_value = "random")]
        tau_mode: TauMode,
        /// Threshold seed (random mode); defaults to the graph seed.
        #[arg(long)]
        tau_seed: Option<u64>,
        /// Threshold value (uniform mode).
        #[arg(long, default_value_t = 3)]
        tau: u32,
        /// Output prefix for `.edges` and `.thresholds`.
        #[arg(long)]
        prefix: PathBuf,
    },
    /// System built from a vertex-cover instance.
    ReduceMvc {
        /// Source graph edge list.
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        k: usize,
        /// Decimal or fraction in (0, 1).
        #[arg(long)]
        epsilon: String,
        #[arg(long, default_value_t = DEFAULT_BETA_CAP)]
        beta_cap: u64,
        #[arg(long)]
        prefix: PathBuf,
    },
    /// System built from a clique instance.
    ReduceClique {
        #[arg(long)]
        edges: PathBuf,
        #[arg(long)]
        k: usize,
        #[arg(long)]
        prefix: PathBuf,
    },
}

fn load(args: &SystemArgs) -> Result<(ThresholdSystem, VertexMap)> {
    let e = File::open(&args.edges).with_context(|| format!("opening {}", args.edges.display()))?;
    let t = File::open(&args.thresholds).with_context(|| format!("opening {}", args.thresholds.display()))?;
    Ok(read_system(BufReader::new(e), BufReader::new(t), args.directed)?)
}

fn emit(out: Option<&Path>, text: &str) -> Result<()> {
    match out {
        Some(p) => fs::write(p, text).with_context(|| format!("writing {}", p.display())),
        None => {
            io::stdout().write_all(text.as_bytes())?;
            Ok(())
        }
    }
}

fn with_ext(prefix: &Path, ext: &str) -> PathBuf {
    let mut s = prefix.as_os_str().to_owned();
    s.push(ext);
    PathBuf::from(s)
}

fn write_system(prefix: &Path, sys: &ThresholdSystem, map: &VertexMap) -> Result<()> {
    let mut e = Vec::new();
    write_edge_list(&mut e, sys, map)?;
    fs::write(with_ext(prefix, ".edges"), e)?;
    let mut t = Vec::new();
    write_thresholds(&mut t, sys, map)?;
    fs::write(with_ext(prefix, ".thresholds"), t)?;
    Ok(())
}

fn write_reduction(prefix: &Path, sys: &ThresholdSystem, spec: &ReductionSpec) -> Result<()> {
    write_system(prefix, sys, &VertexMap::identity(sys.vertex_count()))?;
    fs::write(with_ext(prefix, ".roles.json"), spec.to_json() + "\n")?;
    eprintln!("{} vertices, {} edges", sys.vertex_count(), sys.edge_count());
    Ok(())
}

fn read_source_graph(path: &Path) -> Result<(usize, Vec<(usize, usize)>)> {
    let mut map = VertexMap::default();
    let f = File::open(path).with_context(|| format!("opening {}", path.display()))?;
    let edges = read_edge_list(BufReader::new(f), &mut map)?;
    Ok((map.len(), edges))
}

/// Solves with a special-case algorithm chosen from the structure.
fn solve_special(sys: &ThresholdSystem) -> Result<Option<Configuration>> {
    Ok(match detect_case(sys) {
        SpecialCase::HasConstant1 => Some(solve_constant1(sys)?),
        SpecialCase::CompleteGraph => solve_complete(sys)?,
        SpecialCase::Dag if sys.is_directed() => solve_dag(sys)?,
        _ if !sys.is_directed() => fpt_solve(sys)?,
        _ => bail!("no special-case solver applies to this system"),
    })
}

fn solve(sys: &ThresholdSystem, method: &str, seed: u64, budget: Duration) -> Result<(Status, Option<Configuration>)> {
    let found = |c: Option<Configuration>| match c {
        Some(c) => (Status::Ok, Some(c)),
        None => (Status::Infeasible, None),
    };
    match method {
        "brute" => Ok(found(brute_force_opt(sys, None)?)),
        "fpt" => Ok(found(fpt_solve(sys)?)),
        "special" => Ok(found(solve_special(sys)?)),
        _ => {
            let m: BenchMethod = method.parse()?;
            let res = run_method(sys, m, seed, budget);
            if res.status == Status::Error {
                bail!("{method} cannot run on this system");
            }
            Ok((res.status, res.configuration))
        }
    }
}

fn status_code(status: Status) -> u8 {
    match status {
        Status::Ok => 0,
        Status::Timeout => EXIT_TIMEOUT,
        Status::Error => 1,
        Status::Infeasible | Status::PrunedAll => EXIT_INFEASIBLE,
    }
}

fn run(cli: Cli) -> Result<u8> {
    match cli.command {
        Command::Solve { system, method, seed, budget_ms, out } => {
            let (sys, map) = load(&system)?;
            let (status, c) = solve(&sys, &method, seed, Duration::from_millis(budget_ms))?;
            if let Some(c) = &c {
                debug_assert!(is_fixed_point(&sys, c));
                emit(out.as_deref(), &format_configuration(c, &map))?;
                eprintln!("{method}: weight {}", c.hamming_weight());
            } else {
                eprintln!("{method}: {}", status.name());
            }
            Ok(status_code(status))
        }
        Command::Exact { system, budget_ms, out } => {
            let (sys, map) = load(&system)?;
            let sol = branch_and_bound_opt(&sys, Duration::from_millis(budget_ms));
            let (status, code) = match &sol.outcome {
                ExactOutcome::Optimal(_) => ("optimal", 0),
                ExactOutcome::Infeasible => ("infeasible", EXIT_INFEASIBLE),
                ExactOutcome::Timeout(_) => ("timeout", EXIT_TIMEOUT),
            };
            let c = sol.outcome.configuration();
            let cert = serde_json::json!({
                "status": status,
                "weight": c.map(Configuration::hamming_weight),
                "state_one": c.map(|c| c.support().map(|v| map.token(v)).collect::<Vec<_>>()),
                "is_fixed_point": c.map(|c| is_nontrivial_fixed_point(&sys, c)),
                "nodes": sol.stats.nodes,
                "incumbents": sol.stats.incumbent_history,
                "elapsed_ms": sol.stats.elapsed.as_millis() as u64,
            });
            emit(out.as_deref(), &(serde_json::to_string_pretty(&cert)? + "\n"))?;
            Ok(code)
        }
        Command::ExportLp { system, out } => {
            let (sys, _) = load(&system)?;
            emit(out.as_deref(), &IlpModel::from_system(&sys).to_lp_string())?;
            Ok(0)
        }
        Command::Gen { kind } => {
            match kind {
                GenKind::Gnp { n, p, seed, tau_mode, tau_seed, tau, prefix } => {
                    let edges = generate_gnp(n, p, seed)?;
                    let shape = ThresholdSystem::build(&edges, vec![1; n], false)?;
                    let taus = match tau_mode {
                        TauMode::Random => assign_random_thresholds(&shape, tau_seed.unwrap_or(seed)),
                        TauMode::Uniform => assign_uniform_thresholds(&shape, tau)?,
                    };
                    let sys = shape.with_thresholds(taus)?;
                    write_system(&prefix, &sys, &VertexMap::identity(n))?;
                    eprintln!("{n} vertices, {} edges", sys.edge_count());
                }
                GenKind::ReduceMvc { edges, k, epsilon, beta_cap, prefix } => {
                    let (n, e) = read_source_graph(&edges)?;
                    let (sys, spec) = build_mvc_reduction(n, &e, k, Epsilon::parse(&epsilon)?, beta_cap)?;
                    write_reduction(&prefix, &sys, &spec)?;
                }
                GenKind::ReduceClique { edges, k, prefix } => {
                    let (n, e) = read_source_graph(&edges)?;
                    let (sys, spec) = build_clique_reduction(n, &e, k)?;
                    write_reduction(&prefix, &sys, &spec)?;
                }
            }
            Ok(0)
        }
        Command::Bench { config, set, csv, json, timed } => {
            let mut text = match &config {
                Some(p) => fs::read_to_string(p).with_context(|| format!("reading {}", p.display()))?,
                None => String::new(),
            };
            for kv in &set {
                if !kv.contains('=') {
                    bail!("--set expects KEY=VALUE, got `{kv}`");
                }
                text.push('\n');
                text.push_str(kv);
            }
            let spec = ExperimentSpec::parse_config(&text)?;
            let report = run_experiment(&spec)?;
            let table = if timed { report.full_csv() } else { report.canonical_csv() };
            emit(csv.as_deref(), &table)?;
            if let Some(j) = json {
                fs::write(&j, report.to_json() + "\n").with_context(|| format!("writing {}", j.display()))?;
            }
            for s in &report.summary {
                let ratio = s.mean_ratio.map_or("-".to_string(), |r| format!("{r:.3}"));
                eprintln!("{:<14} feasible {:>3}/{:<3} mean ratio {ratio}", s.method, s.feasible, s.rows);
            }
            Ok(0)
        }
        Command::Validate { system, configuration } => {
            let (sys, map) = load(&system)?;
            let f = File::open(&configuration).with_context(|| format!("opening {}", configuration.display()))?;
            let c = read_configuration(BufReader::new(f), &map)?;
            if is_nontrivial_fixed_point(&sys, &c) {
                println!("nontrivial fixed point, weight {}", c.hamming_weight());
                Ok(0)
            } else if is_fixed_point(&sys, &c) {
                println!("trivial fixed point");
                Ok(EXIT_INFEASIBLE)
            } else {
                println!("not a fixed point");
                Ok(EXIT_INFEASIBLE)
            }
        }
    }
}

fn main() -> ExitCode {
    let cli = match Cli::try_parse() {
        Ok(cli) => cli,
        Err(e) => {
            let _ = e.print();
            return ExitCode::from(if e.use_stderr() { EXIT_USAGE } else { 0 });
        }
    };
    match run(cli) {
        Ok(code) => ExitCode::from(code),
        Err(e) => {
            eprintln!("error: {e:#}");
            let usage = e.downcast_ref::<nminfpe::Error>().is_some_and(|e| {
                matches!(e, nminfpe::Error::UnknownMethod(_) | nminfpe::Error::Precondition(_))
            });
            ExitCode::from(if usage { EXIT_USAGE } else { 1 })
        }
    }
}
