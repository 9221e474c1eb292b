use std::fmt;
use std::fs;
use std::path::Path;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use num_bigint::BigInt;
use num_rational::{BigRational, Rational64};

use epigraph::bounds::{slack_e, theorem4_bound, BoundInputs, BoundReport};
use epigraph::crusade::{
    cutwidth_crusade, optimal_crusade, resilience, Crusade, EngineError, MonotoneTable,
    ResilienceTable,
};
use epigraph::graph::{generate, parse_graph, write_graph, GraphKind};
use epigraph::sim::{
    builtin_policy, estimate_extinction, simulate_replication, PolicyKind, SimCaps, SimError,
};
use epigraph::verify::{run_suite, Scope, SuiteConfig};
use epigraph::{Connectivity, Execution, Graph, GraphError, NodeSet};

use crate::config::{RunConfig, VerifySettings};

/// Why a command did not succeed, with its process exit code.
#[derive(Debug)]
pub enum Failure {
    /// Bad arguments, unreadable input, size caps: exit 2.
    Usage(anyhow::Error),
    /// A policy broke the budget or cured an impossible vertex: exit 3.
    PolicyFault(String),
    /// The run finished but produced nothing usable: exit 4.
    Degenerate(String),
    /// Some verified property failed: exit 1.
    Unverified,
}

impl Failure {
    pub fn code(&self) -> i32 {
        match self {
            Failure::Unverified => 1,
            Failure::Usage(_) => 2,
            Failure::PolicyFault(_) => 3,
            Failure::Degenerate(_) => 4,
        }
    }
}

impl fmt::Display for Failure {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            Failure::Usage(e) => write!(f, "error: {e:#}"),
            Failure::PolicyFault(m) => write!(f, "policy fault: {m}"),
            Failure::Degenerate(m) => write!(f, "degenerate result: {m}"),
            Failure::Unverified => f.write_str("verification failed"),
        }
    }
}

impl From<anyhow::Error> for Failure {
    fn from(e: anyhow::Error) -> Self {
        Failure::Usage(e)
    }
}

impl From<GraphError> for Failure {
    fn from(e: GraphError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<EngineError> for Failure {
    fn from(e: EngineError) -> Self {
        Failure::Usage(e.into())
    }
}

impl From<SimError> for Failure {
    fn from(e: SimError) -> Self {
        match e {
            SimError::PolicyFault { .. } => Failure::PolicyFault(e.to_string()),
            other => Failure::Usage(other.into()),
        }
    }
}

/// Standard output of a command, plus a failure to report after printing it.
#[derive(Debug)]
pub struct Report {
    pub stdout: String,
    pub failure: Option<Failure>,
}

impl Report {
    fn ok(stdout: String) -> Self {
        Report {
            stdout,
            failure: None,
        }
    }
}

pub fn execution(cfg: &RunConfig) -> Execution {
    if cfg.sequential {
        Execution::Sequential
    } else {
        Execution::default()
    }
}

pub struct LoadedGraph {
    pub graph: Graph,
    pub label: String,
}

pub fn load_graph(cfg: &RunConfig) -> Result<LoadedGraph, Failure> {
    let src = cfg
        .graph
        .as_ref()
        .ok_or_else(|| anyhow!("no graph given (use --graph FILE or --family KIND --n N)"))?;
    let connectivity = if src.waive_connectivity {
        Connectivity::Waived
    } else {
        Connectivity::Required
    };
    match (&src.file, &src.family) {
        (Some(path), None) => {
            let text = fs::read_to_string(path)
                .with_context(|| format!("reading graph {}", path.display()))?;
            let graph = parse_graph(&text, connectivity)
                .with_context(|| format!("parsing graph {}", path.display()))?;
            let label = path
                .file_stem()
                .map_or_else(|| "graph".to_string(), |s| s.to_string_lossy().into_owned());
            Ok(LoadedGraph { graph, label })
        }
        (None, Some(family)) => {
            let kind: GraphKind = family.parse()?;
            let n = src.n.ok_or_else(|| anyhow!("--family needs --n"))?;
            let (seed, label) = if kind.is_random() {
                let seed = src.seed.unwrap_or(cfg.seed());
                (Some(seed), format!("{kind}-n{n}-s{seed}"))
            } else {
                (None, format!("{kind}-n{n}"))
            };
            let graph = generate(kind, n, seed)?;
            Ok(LoadedGraph { graph, label })
        }
        (Some(_), Some(_)) => Err(anyhow!("give either a graph file or a family, not both").into()),
        (None, None) => Err(anyhow!("graph source names neither a file nor a family").into()),
    }
}

/// `5` or `10/3`.
pub fn fmt_ratio<T: fmt::Display + PartialEq + From<u8>>(numer: T, denom: T) -> String {
    if denom == T::from(1) {
        numer.to_string()
    } else {
        format!("{numer}/{denom}")
    }
}

/// Exact rational with the decimal expansion `x` prints as, so `0.1` is `1/10`.
pub fn decimal_rational(x: f64) -> anyhow::Result<BigRational> {
    if !x.is_finite() {
        bail!("{x} is not finite");
    }
    let text = x.to_string();
    let (int, frac) = text.split_once('.').unwrap_or((&text, ""));
    let digits: BigInt = format!("{int}{frac}").parse()?;
    Ok(BigRational::new(digits, BigInt::from(10u8).pow(frac.len() as u32)))
}

fn slack_text(g: &Graph, w: u16) -> (Option<Rational64>, String) {
    match slack_e(g.n() as i64, g.max_degree() as i64, w as i64) {
        Ok(e) => (Some(e), fmt_ratio(*e.numer(), *e.denom())),
        Err(_) => (None, "undefined".to_string()),
    }
}

fn write_file(path: &Path, text: &str) -> Result<(), Failure> {
    fs::write(path, text).with_context(|| format!("writing {}", path.display()))?;
    Ok(())
}

fn crusade_block(c: &Crusade) -> String {
    format!("crusade (width {}):\n{c}", c.width())
}

/// Side outputs shared by `cutwidth` and `resilience`.
fn table_and_bound(cfg: &RunConfig, g: &Graph, w: u16, gamma0: u16, slack: Option<Rational64>) -> Result<(), Failure> {
    if let Some(path) = &cfg.table_csv {
        let table = ResilienceTable::build(g)?;
        let mut buf = Vec::new();
        table.write_csv(&mut buf).expect("writing to memory");
        write_file(path, &String::from_utf8(buf).expect("ascii"))?;
    }
    if let Some(path) = &cfg.bound_csv {
        let e = slack.ok_or_else(|| anyhow!("the bound needs a graph with at least one edge"))?;
        let e = BigRational::new((*e.numer()).into(), (*e.denom()).into());
        let r = decimal_rational(cfg.r.unwrap_or(1.0))?;
        let inputs = BoundInputs::new(gamma0 as u64, g.max_degree() as u64, e.clone(), r.clone())
            .map_err(|e| anyhow!(e))?;
        let report = BoundReport {
            n: g.n(),
            max_degree: g.max_degree(),
            cutwidth: w as usize,
            slack: e,
            gamma0: gamma0 as u64,
            budget: r,
            outcome: theorem4_bound(&inputs),
        };
        write_file(path, &format!("{}\n{}\n", BoundReport::HEADER, report.csv_row()))?;
    }
    Ok(())
}

pub fn cmd_cutwidth(cfg: &RunConfig) -> Result<Report, Failure> {
    let LoadedGraph { graph: g, .. } = load_graph(cfg)?;
    let table = MonotoneTable::build(&g)?;
    let w = table.cutwidth();
    let (slack, e_text) = slack_text(&g, w);
    let crusade = cutwidth_crusade(&g, &table)?;
    table_and_bound(cfg, &g, w, w, slack)?;
    Ok(Report::ok(format!("W={w}, E={e_text}\n{}", crusade_block(&crusade))))
}

fn parse_bag(g: &Graph, vertices: &[usize]) -> Result<NodeSet, Failure> {
    if let Some(&v) = vertices.iter().find(|&&v| v >= g.n()) {
        return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
    }
    Ok(NodeSet::from_vertices(vertices.iter().copied()))
}

pub fn cmd_resilience(cfg: &RunConfig) -> Result<Report, Failure> {
    let LoadedGraph { graph: g, .. } = load_graph(cfg)?;
    let bag = cfg.bag.as_ref().ok_or_else(|| anyhow!("no bag given (use --bag 0,1,..)"))?;
    let a = parse_bag(&g, bag)?;
    let table = MonotoneTable::build(&g)?;
    let gamma = resilience(&g, a, &table)?;
    let crusade = optimal_crusade(&g, a, &table)?;
    let w = table.cutwidth();
    let (slack, e_text) = slack_text(&g, w);
    table_and_bound(cfg, &g, w, gamma, slack)?;
    Ok(Report::ok(format!(
        "gamma={gamma}, W={w}, E={e_text}\n{}",
        crusade_block(&crusade)
    )))
}

pub const ESTIMATE_HEADER: &str = "graph,policy,r,reps,mean_tau,se,censored";

fn opt_f64(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

pub fn sim_caps(cfg: &RunConfig) -> Result<SimCaps, Failure> {
    let caps = SimCaps {
        max_time: cfg.caps.max_time,
        max_events: cfg.caps.max_events,
    };
    if caps.max_time.is_nan() || caps.max_time <= 0.0 || caps.max_events == 0 {
        return Err(anyhow!("caps must be positive").into());
    }
    Ok(caps)
}

pub fn cmd_simulate(cfg: &RunConfig) -> Result<Report, Failure> {
    let LoadedGraph { graph: g, label } = load_graph(cfg)?;
    let kind: PolicyKind = cfg.policy.as_deref().unwrap_or("max_degree_infected").parse()?;
    let r = cfg.r.unwrap_or(1.0);
    let reps = cfg.replications.unwrap_or(1000);
    let initial = match &cfg.initial {
        Some(vs) => parse_bag(&g, vs)?,
        None => g.vertices(),
    };
    let caps = sim_caps(cfg)?;
    let table = match kind {
        PolicyKind::ResilienceGreedy => Some(Arc::new(ResilienceTable::build(&g)?)),
        _ => None,
    };
    let policy = builtin_policy(kind, table)?;
    let seed = cfg.seed();
    let est = estimate_extinction(&g, initial, &policy, r, reps, seed, caps, execution(cfg))?;

    if let Some(dir) = &cfg.trace_dir {
        fs::create_dir_all(dir).with_context(|| format!("creating {}", dir.display()))?;
        for i in 0..cfg.traces.min(reps) {
            let trace = simulate_replication(&g, initial, &policy, r, seed, i, caps, true)?;
            write_file(&dir.join(format!("trace_{i}.csv")), &trace.to_string())?;
        }
    }

    let stdout = format!(
        "{ESTIMATE_HEADER}\n{label},{kind},{r},{reps},{},{},{}\n",
        opt_f64(est.mean_tau),
        opt_f64(est.std_error),
        est.censored
    );
    let failure = (!est.is_usable()).then(|| {
        Failure::Degenerate(format!("all {reps} replications were censored; no estimate"))
    });
    Ok(Report { stdout, failure })
}

pub fn suite_config(settings: &VerifySettings, seed: u64) -> Result<(Scope, SuiteConfig), Failure> {
    let scope: Scope = settings.scope.parse().map_err(|e: String| anyhow!(e))?;
    if settings.random_graphs > 0 && settings.random_sizes.is_empty() {
        return Err(anyhow!("random graphs need at least one size").into());
    }
    if settings.walk_runs == 0 {
        return Err(anyhow!("walk runs must be >= 1").into());
    }
    Ok((
        scope,
        SuiteConfig {
            exhaustive_max_n: settings.exhaustive_max_n,
            random_graphs: settings.random_graphs,
            random_sizes: settings.random_sizes.clone(),
            seed,
            walk_runs: settings.walk_runs,
            identity_tuples: settings.identity_tuples,
        },
    ))
}

pub fn cmd_verify(cfg: &RunConfig) -> Result<Report, Failure> {
    let settings = cfg.verify.clone().unwrap_or_default();
    let (scope, suite) = suite_config(&settings, cfg.seed())?;
    let report = run_suite(scope, &suite, None, execution(cfg))?;
    let passed = report.passed();
    let stdout = format!(
        "{report}graphs={} result={}\n",
        report.graphs,
        if passed { "pass" } else { "fail" }
    );
    Ok(Report {
        stdout,
        failure: (!passed).then_some(Failure::Unverified),
    })
}

pub fn cmd_gen(cfg: &RunConfig) -> Result<Report, Failure> {
    if cfg.graph.as_ref().is_some_and(|g| g.file.is_some()) {
        return Err(anyhow!("gen needs --family and --n, not a file").into());
    }
    let LoadedGraph { graph, .. } = load_graph(cfg)?;
    Ok(Report::ok(write_graph(&graph)))
}
