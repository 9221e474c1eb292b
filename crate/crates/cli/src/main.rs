//! `epigraph`: exact crusade quantities, SIS simulation and verification
//! suites from the command line.
//!
//! Every run resolves a [`RunConfig`], echoes it to stderr as one JSON line
//! (`config: {...}`) and can write it with `--emit-config`; passing that
//! file back with `--config` reproduces the output exactly.
//!
//! Exit codes: 0 ok, 1 verification failed, 2 usage or input error,
//! 3 policy fault, 4 degenerate result.

use std::io::Write;
use std::path::PathBuf;
use std::process::ExitCode;

use anyhow::{anyhow, Context};
use clap::{Args, Parser, Subcommand};

mod commands;
mod config;
mod sweep;

use commands::{Failure, Report};
use config::{GraphSource, RunConfig, SweepGrid, VerifySettings};

#[derive(Parser)]
#[command(name = "epigraph", version, about = "Crusades, resilience and budgeted SIS curing on small graphs")]
struct Cli {
    #[command(subcommand)]
    command: Command,
}

#[derive(Subcommand)]
enum Command {
    /// CutWidth W, slack E and a certificate crusade.
    Cutwidth {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        report: TableArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Resilience of a bag with an optimal crusade.
    Resilience {
        #[command(flatten)]
        graph: GraphArgs,
        /// Comma-separated vertex ids, e.g. `0,1`.
        #[arg(long)]
        bag: Option<String>,
        #[command(flatten)]
        report: TableArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Monte Carlo estimate of the extinction time.
    Simulate {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        sim: SimArgs,
        /// Initially infected vertices (default: all).
        #[arg(long)]
        initial: Option<String>,
        /// Directory for per-replication trace CSVs.
        #[arg(long)]
        trace_dir: Option<PathBuf>,
        /// Number of replications (from 0) to write traces for.
        #[arg(long)]
        traces: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Property and lemma suites.
    Verify {
        /// props, lemmas, oracle, walk or all.
        #[arg(long)]
        scope: Option<String>,
        /// Enumerate every connected graph up to this many vertices.
        #[arg(long)]
        max_n: Option<usize>,
        #[arg(long)]
        random_graphs: Option<usize>,
        /// Sizes of the sampled graphs, e.g. `7,8`.
        #[arg(long)]
        random_sizes: Option<String>,
        #[arg(long)]
        walk_runs: Option<u64>,
        #[arg(long)]
        identity_tuples: Option<usize>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Grid over (n, r, policy), one CSV row per cell.
    Sweep {
        /// Graph family for every cell.
        #[arg(long)]
        family: Option<String>,
        /// Sizes: comma list, ranges like `2..14` inclusive.
        #[arg(long)]
        ns: Option<String>,
        /// Budgets, comma-separated.
        #[arg(long)]
        rs: Option<String>,
        /// Policies, comma-separated.
        #[arg(long)]
        policies: Option<String>,
        /// exact or simulate.
        #[arg(long)]
        mode: Option<String>,
        /// Per-cell completion log for resuming.
        #[arg(long)]
        log: Option<PathBuf>,
        #[arg(long)]
        reps: Option<u64>,
        #[arg(long)]
        max_time: Option<f64>,
        #[arg(long)]
        max_events: Option<u64>,
        #[command(flatten)]
        common: CommonArgs,
    },
    /// Write a generated graph in the edge-list format.
    Gen {
        #[command(flatten)]
        graph: GraphArgs,
        #[command(flatten)]
        common: CommonArgs,
    },
}

#[derive(Args, Default)]
struct GraphArgs {
    /// Graph file: `n m` header, then `u v` per edge.
    #[arg(long, conflicts_with = "family")]
    graph: Option<PathBuf>,
    /// complete, path, cycle, star, grid:ROWS, er:P, regular:D.
    #[arg(long)]
    family: Option<String>,
    #[arg(long)]
    n: Option<usize>,
    /// Seed for random families (default: the master seed).
    #[arg(long)]
    graph_seed: Option<u64>,
    /// Accept disconnected graphs.
    #[arg(long)]
    waive_connectivity: bool,
}

#[derive(Args, Default)]
struct TableArgs {
    /// Write `bitmask,cardinality,cut,g,gamma` for every subset.
    #[arg(long)]
    table_csv: Option<PathBuf>,
    /// Write the extinction-time bound report for this bag.
    #[arg(long)]
    bound_csv: Option<PathBuf>,
    /// Budget used by the bound report.
    #[arg(long)]
    r: Option<f64>,
}

#[derive(Args, Default)]
struct SimArgs {
    #[arg(long)]
    policy: Option<String>,
    /// Curing budget.
    #[arg(long)]
    r: Option<f64>,
    #[arg(long)]
    reps: Option<u64>,
    #[arg(long)]
    max_time: Option<f64>,
    #[arg(long)]
    max_events: Option<u64>,
}

#[derive(Args, Default)]
struct CommonArgs {
    /// JSON run config; flags override its fields.
    #[arg(long)]
    config: Option<PathBuf>,
    /// Write the resolved config here.
    #[arg(long)]
    emit_config: Option<PathBuf>,
    /// Master seed (default: $EPIGRAPH_SEED, else 42).
    #[arg(long)]
    seed: Option<u64>,
    /// Write the main output here instead of stdout.
    #[arg(long)]
    output: Option<PathBuf>,
    /// Evaluate replications and graphs on one thread.
    #[arg(long)]
    sequential: bool,
}

/// Comma-separated items; `a..b` expands to `a, .., b`.
fn parse_sizes(text: &str) -> anyhow::Result<Vec<usize>> {
    let mut out = Vec::new();
    for tok in text.split(',').map(str::trim).filter(|t| !t.is_empty()) {
        match tok.split_once("..") {
            Some((a, b)) => {
                let (a, b): (usize, usize) = (a.parse()?, b.trim_start_matches('=').parse()?);
                out.extend(a..=b);
            }
            None => out.push(tok.parse().with_context(|| format!("bad size '{tok}'"))?),
        }
    }
    Ok(out)
}

fn parse_list<T: std::str::FromStr>(text: &str) -> anyhow::Result<Vec<T>>
where
    T::Err: std::error::Error + Send + Sync + 'static,
{
    text.split(',')
        .map(str::trim)
        .filter(|t| !t.is_empty())
        .map(|t| t.parse::<T>().with_context(|| format!("bad list item '{t}'")))
        .collect()
}

fn base_config(name: &str, common: &CommonArgs) -> anyhow::Result<RunConfig> {
    let mut cfg = match &common.config {
        Some(path) => RunConfig::load(path)?,
        None => RunConfig::new(name),
    };
    if cfg.command != name {
        return Err(anyhow!("config is for '{}', not '{name}'", cfg.command));
    }
    if common.seed.is_some() {
        cfg.seed = common.seed;
    }
    if common.output.is_some() {
        cfg.output.clone_from(&common.output);
    }
    cfg.sequential |= common.sequential;
    Ok(cfg)
}

fn apply_graph(cfg: &mut RunConfig, g: &GraphArgs) {
    let any = g.graph.is_some() || g.family.is_some() || g.n.is_some() || g.graph_seed.is_some();
    if !any && !g.waive_connectivity {
        return;
    }
    let src = cfg.graph.get_or_insert_with(GraphSource::default);
    if let Some(file) = &g.graph {
        src.file = Some(file.clone());
        src.family = None;
    }
    if let Some(family) = &g.family {
        src.family = Some(family.clone());
        src.file = None;
    }
    if g.n.is_some() {
        src.n = g.n;
    }
    if g.graph_seed.is_some() {
        src.seed = g.graph_seed;
    }
    src.waive_connectivity |= g.waive_connectivity;
}

fn apply_table(cfg: &mut RunConfig, t: &TableArgs) {
    if t.table_csv.is_some() {
        cfg.table_csv.clone_from(&t.table_csv);
    }
    if t.bound_csv.is_some() {
        cfg.bound_csv.clone_from(&t.bound_csv);
    }
    if t.r.is_some() {
        cfg.r = t.r;
    }
}

fn apply_caps(cfg: &mut RunConfig, max_time: Option<f64>, max_events: Option<u64>) {
    if let Some(t) = max_time {
        cfg.caps.max_time = t;
    }
    if let Some(e) = max_events {
        cfg.caps.max_events = e;
    }
}

type Runner = fn(&RunConfig) -> Result<Report, Failure>;

fn resolve(command: &Command) -> anyhow::Result<(RunConfig, &CommonArgs, Runner)> {
    Ok(match command {
        Command::Cutwidth { graph, report, common } => {
            let mut cfg = base_config("cutwidth", common)?;
            apply_graph(&mut cfg, graph);
            apply_table(&mut cfg, report);
            (cfg, common, commands::cmd_cutwidth as Runner)
        }
        Command::Resilience { graph, bag, report, common } => {
            let mut cfg = base_config("resilience", common)?;
            apply_graph(&mut cfg, graph);
            apply_table(&mut cfg, report);
            if let Some(bag) = bag {
                cfg.bag = Some(parse_list(bag)?);
            }
            (cfg, common, commands::cmd_resilience as Runner)
        }
        Command::Simulate { graph, sim, initial, trace_dir, traces, common } => {
            let mut cfg = base_config("simulate", common)?;
            apply_graph(&mut cfg, graph);
            if sim.policy.is_some() {
                cfg.policy.clone_from(&sim.policy);
            }
            if sim.r.is_some() {
                cfg.r = sim.r;
            }
            if sim.reps.is_some() {
                cfg.replications = sim.reps;
            }
            apply_caps(&mut cfg, sim.max_time, sim.max_events);
            if let Some(initial) = initial {
                cfg.initial = Some(parse_list(initial)?);
            }
            if trace_dir.is_some() {
                cfg.trace_dir.clone_from(trace_dir);
            }
            if let Some(k) = traces {
                cfg.traces = *k;
            }
            (cfg, common, commands::cmd_simulate as Runner)
        }
        Command::Verify {
            scope,
            max_n,
            random_graphs,
            random_sizes,
            walk_runs,
            identity_tuples,
            common,
        } => {
            let mut cfg = base_config("verify", common)?;
            let v = cfg.verify.get_or_insert_with(VerifySettings::default);
            if let Some(s) = scope {
                v.scope.clone_from(s);
            }
            if let Some(n) = max_n {
                v.exhaustive_max_n = *n;
            }
            if let Some(k) = random_graphs {
                v.random_graphs = *k;
            }
            if let Some(s) = random_sizes {
                v.random_sizes = parse_sizes(s)?;
            }
            if let Some(k) = walk_runs {
                v.walk_runs = *k;
            }
            if let Some(k) = identity_tuples {
                v.identity_tuples = *k;
            }
            (cfg, common, commands::cmd_verify as Runner)
        }
        Command::Sweep {
            family,
            ns,
            rs,
            policies,
            mode,
            log,
            reps,
            max_time,
            max_events,
            common,
        } => {
            let mut cfg = base_config("sweep", common)?;
            let s = cfg.sweep.get_or_insert_with(SweepGrid::default);
            if let Some(f) = family {
                s.family.clone_from(f);
            }
            if let Some(ns) = ns {
                s.ns = parse_sizes(ns)?;
            }
            if let Some(rs) = rs {
                s.rs = parse_list(rs)?;
            }
            if let Some(p) = policies {
                s.policies = p.split(',').map(str::trim).filter(|t| !t.is_empty()).map(String::from).collect();
            }
            if let Some(m) = mode {
                s.mode.clone_from(m);
            }
            if log.is_some() {
                s.log.clone_from(log);
            }
            if reps.is_some() {
                cfg.replications = *reps;
            }
            apply_caps(&mut cfg, *max_time, *max_events);
            (cfg, common, sweep::cmd_sweep as Runner)
        }
        Command::Gen { graph, common } => {
            let mut cfg = base_config("gen", common)?;
            apply_graph(&mut cfg, graph);
            (cfg, common, commands::cmd_gen as Runner)
        }
    })
}

fn run(cli: &Cli) -> Result<Report, Failure> {
    let (mut cfg, common, runner) = resolve(&cli.command)?;
    cfg.resolve_seed()?;
    eprintln!("config: {}", cfg.to_json());
    if let Some(path) = &common.emit_config {
        let text = serde_json::to_string_pretty(&cfg).expect("config serializes");
        std::fs::write(path, text + "\n").with_context(|| format!("writing {}", path.display()))?;
    }
    let report = runner(&cfg)?;
    if let Some(path) = &cfg.output {
        std::fs::write(path, &report.stdout).with_context(|| format!("writing {}", path.display()))?;
        return Ok(Report {
            stdout: String::new(),
            failure: report.failure,
        });
    }
    Ok(report)
}

fn main() -> ExitCode {
    let cli = Cli::parse();
    let (stdout, failure) = match run(&cli) {
        Ok(report) => (report.stdout, report.failure),
        Err(f) => (String::new(), Some(f)),
    };
    let mut out = std::io::stdout().lock();
    if out.write_all(stdout.as_bytes()).and_then(|_| out.flush()).is_err() {
        return ExitCode::from(2);
    }
    match failure {
        None => ExitCode::SUCCESS,
        Some(f) => {
            eprintln!("{f}");
            ExitCode::from(f.code() as u8)
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn sizes_and_ranges() {
        assert_eq!(parse_sizes("2..5,8").unwrap(), [2, 3, 4, 5, 8]);
        assert_eq!(parse_sizes("3..=4").unwrap(), [3, 4]);
        assert!(parse_sizes("").unwrap().is_empty());
        assert!(parse_sizes("x").is_err());
        assert_eq!(parse_list::<f64>("1, 2.5").unwrap(), [1.0, 2.5]);
    }

    #[test]
    fn cli_definition_is_consistent() {
        use clap::CommandFactory;
        Cli::command().debug_assert();
    }
}
