//! Experiment harness: threshold assignment, random graphs, and ratio reports.

use std::fmt;
use std::path::PathBuf;
use std::str::FromStr;
use std::time::{Duration, Instant};

use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::Serialize;

use crate::baselines::{baseline_fixed_point, rank_vertices, Method, RankOptions};
use crate::config::Configuration;
use crate::dynamics::is_nontrivial_fixed_point;
use crate::error::{Error, Result};
use crate::exact::{branch_and_bound_opt, ExactOutcome};
use crate::heuristics::{greedy_framework, GreedyOptions, Strategy};
use crate::io::{read_system, VertexMap};
use crate::system::ThresholdSystem;

/// `τ_v` uniform in `[min(3, deg+1), deg+1]`. Never produces 0.
pub fn assign_random_thresholds(sys: &ThresholdSystem, rng_seed: u64) -> Vec<u32> {
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    (0..sys.vertex_count())
        .map(|v| {
            let hi = sys.degree(v) as u32 + 1;
            rng.gen_range(hi.min(3)..=hi)
        })
        .collect()
}

/// Like [`assign_random_thresholds`] but rejects vertices of degree below 2,
/// where the range `[3, deg+1]` is empty.
pub fn assign_random_thresholds_strict(sys: &ThresholdSystem, rng_seed: u64) -> Result<Vec<u32>> {
    if let Some(v) = (0..sys.vertex_count()).find(|&v| sys.degree(v) < 2) {
        return Err(Error::Precondition(format!("vertex {v} has degree {} < 2", sys.degree(v))));
    }
    Ok(assign_random_thresholds(sys, rng_seed))
}

/// `τ_v = min(tau, deg+2)`.
pub fn assign_uniform_thresholds(sys: &ThresholdSystem, tau: u32) -> Result<Vec<u32>> {
    if tau == 0 {
        return Err(Error::Precondition("uniform threshold must be at least 1".into()));
    }
    Ok((0..sys.vertex_count()).map(|v| tau.min(sys.degree(v) as u32 + 2)).collect())
}

/// Erdős–Rényi `G(n, p)` edge list, pairs visited in lexicographic order.
pub fn generate_gnp(n: usize, p: f64, rng_seed: u64) -> Result<Vec<(usize, usize)>> {
    if !(0.0..=1.0).contains(&p) {
        return Err(Error::Precondition(format!("edge probability {p} is not in [0, 1]")));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(rng_seed);
    let mut edges = Vec::new();
    for u in 0..n {
        for v in u + 1..n {
            if rng.gen_bool(p) {
                edges.push((u, v));
            }
        }
    }
    Ok(edges)
}

/// Everything `bench` can run on one system.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum BenchMethod {
    Greedy { strategy: Strategy, sub: bool },
    Baseline(Method),
    Exact,
}

impl BenchMethod {
    pub const ALL: [BenchMethod; 9] = [
        BenchMethod::Greedy { strategy: Strategy::Full, sub: false },
        BenchMethod::Greedy { strategy: Strategy::Np, sub: false },
        BenchMethod::Greedy { strategy: Strategy::Thresh, sub: false },
        BenchMethod::Greedy { strategy: Strategy::Full, sub: true },
        BenchMethod::Baseline(Method::DegDis),
        BenchMethod::Baseline(Method::Random),
        BenchMethod::Baseline(Method::Pagerank),
        BenchMethod::Baseline(Method::Distance),
        BenchMethod::Exact,
    ];

    pub fn name(self) -> String {
        match self {
            BenchMethod::Greedy { sub: true, .. } => "greedy_sub".into(),
            BenchMethod::Greedy { strategy, .. } => format!("greedy_{strategy}"),
            BenchMethod::Baseline(m) => m.name().into(),
            BenchMethod::Exact => "exact".into(),
        }
    }
}

impl fmt::Display for BenchMethod {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(&self.name())
    }
}

impl FromStr for BenchMethod {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        BenchMethod::ALL
            .into_iter()
            .find(|m| m.name() == s)
            .ok_or_else(|| Error::UnknownMethod(s.to_string()))
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "snake_case")]
pub enum Status {
    Ok,
    Infeasible,
    PrunedAll,
    Timeout,
    /// The method rejected the instance or returned an invalid configuration.
    Error,
}

impl Status {
    pub fn name(self) -> &'static str {
        match self {
            Status::Ok => "ok",
            Status::Infeasible => "infeasible",
            Status::PrunedAll => "pruned_all",
            Status::Timeout => "timeout",
            Status::Error => "error",
        }
    }
}

/// Outcome of one method on one system.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct MethodResult {
    pub status: Status,
    pub configuration: Option<Configuration>,
    pub elapsed: Duration,
}

/// Runs `method` and passes its output through the fixed-point check.
pub fn run_method(sys: &ThresholdSystem, method: BenchMethod, rng_seed: u64, exact_budget: Duration) -> MethodResult {
    let start = Instant::now();
    let raw: Result<(Status, Option<Configuration>)> = match method {
        BenchMethod::Greedy { strategy, sub } => greedy_framework(sys, GreedyOptions::new(strategy).sub(sub)).map(|run| {
            match run.best {
                Some(c) => (Status::Ok, Some(c)),
                None if run.pruned > 0 && run.infeasible == 0 => (Status::PrunedAll, None),
                None => (Status::Infeasible, None),
            }
        }),
        BenchMethod::Baseline(m) => {
            let ranking = rank_vertices(sys, m, RankOptions { rng_seed, ..Default::default() });
            baseline_fixed_point(sys, &ranking).map(|c| match c {
                Some(c) => (Status::Ok, Some(c)),
                None => (Status::Infeasible, None),
            })
        }
        BenchMethod::Exact => Ok(match branch_and_bound_opt(sys, exact_budget).outcome {
            ExactOutcome::Optimal(c) => (Status::Ok, Some(c)),
            ExactOutcome::Infeasible => (Status::Infeasible, None),
            ExactOutcome::Timeout(c) => (Status::Timeout, c),
        }),
    };
    let elapsed = start.elapsed();
    let (status, configuration) = match raw {
        Ok((_, Some(c))) if !is_nontrivial_fixed_point(sys, &c) => (Status::Error, None),
        Ok(pair) => pair,
        Err(_) => (Status::Error, None),
    };
    MethodResult { status, configuration, elapsed }
}

#[derive(Debug, Clone, PartialEq)]
pub enum InstanceSource {
    EdgeList { path: PathBuf, directed: bool },
    Gnp { n: usize, p: f64, seed: u64, count: usize },
}

#[derive(Debug, Clone, PartialEq)]
pub enum ThresholdMode {
    Random { seed: u64 },
    Uniform(u32),
    File(PathBuf),
}

impl ThresholdMode {
    pub fn label(&self) -> String {
        match self {
            ThresholdMode::Random { .. } => "random".into(),
            ThresholdMode::Uniform(t) => format!("uniform{t}"),
            ThresholdMode::File(_) => "file".into(),
        }
    }
}

#[derive(Debug, Clone, PartialEq)]
pub struct ExperimentSpec {
    pub source: InstanceSource,
    pub thresholds: ThresholdMode,
    pub methods: Vec<BenchMethod>,
    pub repetitions: usize,
    pub exact_budget: Duration,
    /// Solve for OPT even when `exact` is not among `methods`.
    pub with_opt: bool,
}

impl Default for ExperimentSpec {
    fn default() -> Self {
        ExperimentSpec {
            source: InstanceSource::Gnp { n: 20, p: 0.2, seed: 1, count: 1 },
            thresholds: ThresholdMode::Random { seed: 1 },
            methods: vec![BenchMethod::Greedy { strategy: Strategy::Np, sub: false }, BenchMethod::Baseline(Method::Random)],
            repetitions: 1,
            exact_budget: Duration::from_secs(10),
            with_opt: true,
        }
    }
}

fn parse_value<T: FromStr>(key: &str, value: &str) -> Result<T> {
    value.parse().map_err(|_| Error::Precondition(format!("bad value `{value}` for `{key}`")))
}

fn parse_bool(key: &str, value: &str) -> Result<bool> {
    match value {
        "true" | "yes" | "1" => Ok(true),
        "false" | "no" | "0" => Ok(false),
        _ => Err(Error::Precondition(format!("bad value `{value}` for `{key}`"))),
    }
}

impl ExperimentSpec {
    /// Reads a flat `key = value` file (`#` starts a comment). Keys:
    ///
    /// `source` (`gnp` | `edges`), `gnp_n`, `gnp_p`, `gnp_seed`, `instances`,
    /// `edges`, `directed`, `tau_mode` (`random` | `uniform` | `file`),
    /// `tau_seed`, `tau`, `thresholds`, `methods` (comma separated),
    /// `repetitions`, `exact_budget_ms`, `with_opt`.
    pub fn parse_config(text: &str) -> Result<Self> {
        let mut kv = std::collections::BTreeMap::new();
        for (i, raw) in text.lines().enumerate() {
            let line = raw.split('#').next().unwrap_or("").trim();
            if line.is_empty() {
                continue;
            }
            let (k, v) = line
                .split_once('=')
                .ok_or_else(|| Error::Parse { line: i + 1, message: "expected `key = value`".into() })?;
            kv.insert(k.trim().to_string(), v.trim().to_string());
        }
        let mut spec = ExperimentSpec::default();
        let get = |k: &str| kv.get(k).map(String::as_str);
        let (mut n, mut p, mut seed, mut count) = (20usize, 0.2f64, 1u64, 1usize);
        if let Some(v) = get("gnp_n") {
            n = parse_value("gnp_n", v)?;
        }
        if let Some(v) = get("gnp_p") {
            p = parse_value("gnp_p", v)?;
        }
        if let Some(v) = get("gnp_seed") {
            seed = parse_value("gnp_seed", v)?;
        }
        if let Some(v) = get("instances") {
            count = parse_value("instances", v)?;
        }
        spec.source = match get("source").unwrap_or("gnp") {
            "gnp" => InstanceSource::Gnp { n, p, seed, count },
            "edges" => InstanceSource::EdgeList {
                path: get("edges").ok_or_else(|| Error::Precondition("`source = edges` needs `edges`".into()))?.into(),
                directed: get("directed").map(|v| parse_bool("directed", v)).transpose()?.unwrap_or(false),
            },
            other => return Err(Error::Precondition(format!("unknown source `{other}`"))),
        };
        spec.thresholds = match get("tau_mode").unwrap_or("random") {
            "random" => ThresholdMode::Random { seed: get("tau_seed").map(|v| parse_value("tau_seed", v)).transpose()?.unwrap_or(1) },
            "uniform" => ThresholdMode::Uniform(parse_value("tau", get("tau").unwrap_or(""))?),
            "file" => ThresholdMode::File(
                get("thresholds").ok_or_else(|| Error::Precondition("`tau_mode = file` needs `thresholds`".into()))?.into(),
            ),
            other => return Err(Error::Precondition(format!("unknown tau_mode `{other}`"))),
        };
        if let Some(v) = get("methods") {
            spec.methods = v.split(',').map(|m| m.trim().parse()).collect::<Result<_>>()?;
        }
        if let Some(v) = get("repetitions") {
            spec.repetitions = parse_value("repetitions", v)?;
        }
        if let Some(v) = get("exact_budget_ms") {
            spec.exact_budget = Duration::from_millis(parse_value("exact_budget_ms", v)?);
        }
        if let Some(v) = get("with_opt") {
            spec.with_opt = parse_bool("with_opt", v)?;
        }
        const KNOWN: [&str; 15] = [
            "source", "gnp_n", "gnp_p", "gnp_seed", "instances", "edges", "directed", "tau_mode", "tau_seed", "tau",
            "thresholds", "methods", "repetitions", "exact_budget_ms", "with_opt",
        ];
        if let Some(k) = kv.keys().find(|k| !KNOWN.contains(&k.as_str())) {
            return Err(Error::Precondition(format!("unknown key `{k}`")));
        }
        spec.validate()?;
        Ok(spec)
    }

    pub fn validate(&self) -> Result<()> {
        if self.repetitions == 0 {
            return Err(Error::Precondition("repetitions must be at least 1".into()));
        }
        if self.methods.is_empty() {
            return Err(Error::Precondition("no methods given".into()));
        }
        if let InstanceSource::Gnp { p, count, .. } = self.source {
            if !(0.0..=1.0).contains(&p) || count == 0 {
                return Err(Error::Precondition("gnp needs 0 <= p <= 1 and at least one instance".into()));
            }
        }
        Ok(())
    }
}

/// One (instance, repetition, method) cell.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct ReportRow {
    pub instance: String,
    pub method: String,
    pub seed: u64,
    pub tau_mode: String,
    pub n: usize,
    pub m: usize,
    pub weight: Option<usize>,
    pub opt: Option<usize>,
    pub ratio: Option<f64>,
    pub runtime_ms: f64,
    pub status: Status,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct MethodSummary {
    pub method: String,
    pub rows: usize,
    pub feasible: usize,
    pub feasibility_rate: f64,
    /// Mean ratio over rows with both a weight and a proven optimum.
    pub mean_ratio: Option<f64>,
    pub ratio_rows: usize,
    pub mean_runtime_ms: f64,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct RatioReport {
    pub rows: Vec<ReportRow>,
    pub summary: Vec<MethodSummary>,
    /// Instances whose optimum could not be proven within the budget.
    pub opt_timeouts: usize,
}

struct Instance {
    name: String,
    edges: Vec<(usize, usize)>,
    n: usize,
    directed: bool,
    file_thresholds: Option<Vec<u32>>,
}

fn load_instances(spec: &ExperimentSpec) -> Result<Vec<Instance>> {
    match &spec.source {
        InstanceSource::Gnp { n, p, seed, count } => (0..*count as u64)
            .map(|i| {
                Ok(Instance {
                    name: format!("gnp_n{n}_p{p}_s{}", seed + i),
                    edges: generate_gnp(*n, *p, seed + i)?,
                    n: *n,
                    directed: false,
                    file_thresholds: None,
                })
            })
            .collect(),
        InstanceSource::EdgeList { path, directed } => {
            let name = path.file_stem().map_or("edges".into(), |s| s.to_string_lossy().into_owned());
            let edges_text = std::fs::read_to_string(path)?;
            let (edges, n, file_thresholds) = match &spec.thresholds {
                ThresholdMode::File(tp) => {
                    let (sys, _) = read_system(edges_text.as_bytes(), std::fs::read_to_string(tp)?.as_bytes(), *directed)?;
                    (sys.edges().to_vec(), sys.vertex_count(), Some(sys.thresholds().to_vec()))
                }
                _ => {
                    let mut map = VertexMap::default();
                    let edges = crate::io::read_edge_list(edges_text.as_bytes(), &mut map)?;
                    (edges, map.len(), None)
                }
            };
            Ok(vec![Instance { name, edges, n, directed: *directed, file_thresholds }])
        }
    }
}

/// Runs every method on every (instance, repetition). Rows come back in
/// canonical order: instance, seed, then method in the listed order.
pub fn run_experiment(spec: &ExperimentSpec) -> Result<RatioReport> {
    spec.validate()?;
    let mut rows = Vec::new();
    let mut opt_timeouts = 0;
    for inst in load_instances(spec)? {
        let shape = ThresholdSystem::build(&inst.edges, vec![1; inst.n], inst.directed)?;
        for rep in 0..spec.repetitions as u64 {
            let (seed, taus) = match &spec.thresholds {
                ThresholdMode::Random { seed } => (seed + rep, assign_random_thresholds(&shape, seed + rep)),
                ThresholdMode::Uniform(t) => (rep, assign_uniform_thresholds(&shape, *t)?),
                ThresholdMode::File(_) => (rep, inst.file_thresholds.clone().expect("thresholds read with the edges")),
            };
            let sys = shape.with_thresholds(taus)?;
            let exact_cell = spec
                .methods
                .contains(&BenchMethod::Exact)
                .then(|| run_method(&sys, BenchMethod::Exact, seed, spec.exact_budget))
                .or_else(|| spec.with_opt.then(|| run_method(&sys, BenchMethod::Exact, seed, spec.exact_budget)));
            let opt = exact_cell.as_ref().and_then(|r| match r.status {
                Status::Ok => r.configuration.as_ref().map(Configuration::hamming_weight),
                _ => None,
            });
            if exact_cell.as_ref().is_some_and(|r| r.status == Status::Timeout) {
                opt_timeouts += 1;
            }
            for &method in &spec.methods {
                let res = match (&exact_cell, method) {
                    (Some(cell), BenchMethod::Exact) => cell.clone(),
                    _ => run_method(&sys, method, seed, spec.exact_budget),
                };
                let weight = res.configuration.as_ref().map(Configuration::hamming_weight);
                let ratio = match (weight, opt, res.status) {
                    (Some(w), Some(o), Status::Ok) => Some(w as f64 / o as f64),
                    _ => None,
                };
                rows.push(ReportRow {
                    instance: inst.name.clone(),
                    method: method.name(),
                    seed,
                    tau_mode: spec.thresholds.label(),
                    n: sys.vertex_count(),
                    m: sys.edge_count(),
                    weight,
                    opt,
                    ratio,
                    runtime_ms: res.elapsed.as_secs_f64() * 1e3,
                    status: res.status,
                });
            }
        }
    }
    let summary = summarize(&rows, &spec.methods);
    Ok(RatioReport { rows, summary, opt_timeouts })
}

fn summarize(rows: &[ReportRow], methods: &[BenchMethod]) -> Vec<MethodSummary> {
    methods
        .iter()
        .map(|m| {
            let name = m.name();
            let mine: Vec<&ReportRow> = rows.iter().filter(|r| r.method == name).collect();
            let feasible = mine.iter().filter(|r| r.weight.is_some() && r.status == Status::Ok).count();
            let ratios: Vec<f64> = mine.iter().filter_map(|r| r.ratio).collect();
            MethodSummary {
                method: name,
                rows: mine.len(),
                feasible,
                feasibility_rate: if mine.is_empty() { 0.0 } else { feasible as f64 / mine.len() as f64 },
                mean_ratio: (!ratios.is_empty()).then(|| ratios.iter().sum::<f64>() / ratios.len() as f64),
                ratio_rows: ratios.len(),
                mean_runtime_ms: if mine.is_empty() {
                    0.0
                } else {
                    mine.iter().map(|r| r.runtime_ms).sum::<f64>() / mine.len() as f64
                },
            }
        })
        .collect()
}

#[derive(Serialize)]
struct CanonicalRow<'a> {
    instance: &'a str,
    method: &'a str,
    seed: u64,
    tau_mode: &'a str,
    n: usize,
    m: usize,
    weight: Option<usize>,
    opt: Option<usize>,
    ratio: Option<String>,
    status: &'static str,
    #[serde(skip_serializing_if = "Option::is_none")]
    runtime_ms: Option<String>,
}

impl RatioReport {
    /// Rows sorted by (instance, seed, method) without the runtime column, so
    /// identical specs give identical bytes.
    pub fn canonical_csv(&self) -> String {
        self.csv(false)
    }

    /// All columns including `runtime_ms`, in run order.
    pub fn full_csv(&self) -> String {
        self.csv(true)
    }

    fn csv(&self, timed: bool) -> String {
        let mut rows: Vec<&ReportRow> = self.rows.iter().collect();
        if !timed {
            rows.sort_by(|a, b| (&a.instance, a.seed, &a.method).cmp(&(&b.instance, b.seed, &b.method)));
        }
        let mut w = csv::Writer::from_writer(Vec::new());
        for r in rows {
            let row = CanonicalRow {
                instance: &r.instance,
                method: &r.method,
                seed: r.seed,
                tau_mode: &r.tau_mode,
                n: r.n,
                m: r.m,
                weight: r.weight,
                opt: r.opt,
                ratio: r.ratio.map(|x| format!("{x:.6}")),
                status: r.status.name(),
                runtime_ms: timed.then(|| format!("{:.3}", r.runtime_ms)),
            };
            w.serialize(row).expect("writing csv to memory");
        }
        String::from_utf8(w.into_inner().expect("flush to memory")).expect("csv is utf-8")
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string_pretty(self).expect("report serializes")
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::system::build_system;

    fn star(leaves: usize) -> ThresholdSystem {
        let e: Vec<_> = (1..=leaves).map(|v| (0, v)).collect();
        build_system(&e, vec![1; leaves + 1], false).unwrap()
    }

    #[test]
    fn random_threshold_ranges() {
        let sys = star(5);
        let mut seen = [0usize; 8];
        for seed in 0..4000 {
            let t = assign_random_thresholds(&sys, seed);
            assert!((3..=6).contains(&t[0]));
            assert!(t[1..].iter().all(|&x| x == 2));
            seen[t[0] as usize] += 1;
        }
        for tau in 3..=6 {
            assert!((800..1200).contains(&seen[tau]), "{seen:?}");
        }
        assert_eq!(assign_random_thresholds(&sys, 3), assign_random_thresholds(&sys, 3));
        assert!(assign_random_thresholds_strict(&sys, 3).is_err());
    }

    #[test]
    fn uniform_threshold_clamps() {
        let sys = star(3);
        assert_eq!(assign_uniform_thresholds(&sys, 8).unwrap(), vec![5, 3, 3, 3]);
        assert_eq!(assign_uniform_thresholds(&sys, 1).unwrap(), vec![1; 4]);
        assert!(assign_uniform_thresholds(&sys, 0).is_err());
    }

    #[test]
    fn gnp_extremes() {
        assert!(generate_gnp(10, 0.0, 1).unwrap().is_empty());
        assert_eq!(generate_gnp(10, 1.0, 1).unwrap().len(), 45);
        assert_eq!(generate_gnp(30, 0.3, 5).unwrap(), generate_gnp(30, 0.3, 5).unwrap());
        assert!(generate_gnp(5, 1.5, 1).is_err());
    }

    #[test]
    fn gnp_edge_count_is_binomial() {
        let (n, p) = (500usize, 0.02);
        let pairs = (n * (n - 1) / 2) as f64;
        let m = generate_gnp(n, p, 42).unwrap().len() as f64;
        let sd = (pairs * p * (1.0 - p)).sqrt();
        assert!((m - pairs * p).abs() <= 4.0 * sd);
    }

    #[test]
    fn method_names() {
        for m in BenchMethod::ALL {
            assert_eq!(m.name().parse::<BenchMethod>().unwrap(), m);
        }
        assert!("greedy".parse::<BenchMethod>().is_err());
    }

    #[test]
    fn config_parsing() {
        let spec = ExperimentSpec::parse_config(
            "# scenario\nsource = gnp\ngnp_n = 10\ngnp_p = 0.3\ninstances = 2\n\
             tau_mode = uniform\ntau = 4\nmethods = greedy_np, pagerank, exact\nrepetitions = 3\n",
        )
        .unwrap();
        assert_eq!(spec.source, InstanceSource::Gnp { n: 10, p: 0.3, seed: 1, count: 2 });
        assert_eq!(spec.thresholds, ThresholdMode::Uniform(4));
        assert_eq!(spec.methods.len(), 3);
        assert_eq!(spec.repetitions, 3);
        assert!(ExperimentSpec::parse_config("colour = red\n").is_err());
        assert!(ExperimentSpec::parse_config("methods = magic\n").is_err());
        assert!(ExperimentSpec::parse_config("repetitions = 0\n").is_err());
        assert!(ExperimentSpec::parse_config("just words\n").is_err());
    }

    #[test]
    fn uniform_eight_is_infeasible_everywhere() {
        let spec = ExperimentSpec {
            source: InstanceSource::Gnp { n: 12, p: 0.2, seed: 3, count: 1 },
            thresholds: ThresholdMode::Uniform(8),
            methods: BenchMethod::ALL.to_vec(),
            ..Default::default()
        };
        let report = run_experiment(&spec).unwrap();
        let max_deg_ok = report.rows.iter().all(|r| r.status == Status::Infeasible);
        // with n = 12 and p = 0.2 no vertex reaches degree 6
        assert!(max_deg_ok, "{}", report.canonical_csv());
    }

    #[test]
    fn csv_columns() {
        let spec = ExperimentSpec::parse_config("gnp_n = 8\ngnp_p = 0.4\nmethods = greedy_np, exact\n").unwrap();
        let report = run_experiment(&spec).unwrap();
        let canonical = report.canonical_csv();
        let full = report.full_csv();
        assert_eq!(canonical.lines().next().unwrap(), "instance,method,seed,tau_mode,n,m,weight,opt,ratio,status");
        assert_eq!(full.lines().next().unwrap(), "instance,method,seed,tau_mode,n,m,weight,opt,ratio,status,runtime_ms");
        assert_eq!(canonical.lines().count(), 3);
        assert_eq!(full.lines().count(), 3);
    }
}
