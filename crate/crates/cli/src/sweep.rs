use std::collections::HashMap;
use std::fs::{self, OpenOptions};
use std::io::Write;
use std::sync::Arc;

use anyhow::{anyhow, bail, Context};
use num_rational::BigRational;

use epigraph::bounds::{exact_extinction_complete_f64, slack_e, theorem4_bound, BoundInputs};
use epigraph::crusade::{cutwidth, ResilienceTable, MONOTONE_MAX_N};
use epigraph::graph::{generate, GraphKind};
use epigraph::sim::{builtin_policy, estimate_extinction, PolicyKind, SimError};
use epigraph::Graph;

use crate::commands::{decimal_rational, execution, sim_caps, Failure, Report};
use crate::config::RunConfig;

pub const SWEEP_HEADER: &str = "graph,n,r,policy,mode,mean_tau,se,censored,bound_log10,status";

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
enum Mode {
    Exact,
    Simulate,
}

struct Cell {
    n: usize,
    r: f64,
    policy: String,
}

#[derive(Default)]
struct Row {
    mean: Option<f64>,
    se: Option<f64>,
    censored: u64,
    bound_log10: Option<f64>,
    status: &'static str,
}

fn opt(x: Option<f64>) -> String {
    x.map_or_else(String::new, |v| v.to_string())
}

/// `log10` of the extinction-time bound from `I_0 = V`, where `γ(V) = W`;
/// `None` when the theorem's condition fails or `W` is out of reach.
fn bound_from_full_infection(g: &Graph, r: f64) -> Option<f64> {
    if g.n() > MONOTONE_MAX_N || r.is_nan() || r <= 0.0 {
        return None;
    }
    let w = cutwidth(g).ok()?;
    let e = slack_e(g.n() as i64, g.max_degree() as i64, w as i64).ok()?;
    let e = BigRational::new((*e.numer()).into(), (*e.denom()).into());
    let inputs = BoundInputs::new(w as u64, g.max_degree() as u64, e, decimal_rational(r).ok()?).ok()?;
    theorem4_bound(&inputs).bound().map(|b| b.log10())
}

fn run_cell(cfg: &RunConfig, kind: GraphKind, mode: Mode, cell: &Cell, index: u64) -> Row {
    let seed = cfg.seed();
    let policy: PolicyKind = match cell.policy.parse() {
        Ok(p) => p,
        Err(_) => return Row { status: "invalid_policy", ..Row::default() },
    };
    let graph = match generate(kind, cell.n, kind.is_random().then_some(seed)) {
        Ok(g) => g,
        Err(_) => return Row { status: "invalid_graph", ..Row::default() },
    };
    let bound_log10 = bound_from_full_infection(&graph, cell.r);
    match mode {
        Mode::Exact => {
            if kind != GraphKind::Complete {
                return Row { status: "unsupported", bound_log10, ..Row::default() };
            }
            if !(cell.r > 0.0 && cell.r.is_finite()) {
                // Without curing the epidemic never ends.
                return Row { status: "censored", bound_log10, ..Row::default() };
            }
            match exact_extinction_complete_f64(cell.n, cell.r) {
                Ok(v) => Row {
                    mean: Some(v),
                    bound_log10,
                    status: "ok",
                    ..Row::default()
                },
                Err(_) => Row { status: "invalid", bound_log10, ..Row::default() },
            }
        }
        Mode::Simulate => {
            let table = match policy {
                PolicyKind::ResilienceGreedy => match ResilienceTable::build(&graph) {
                    Ok(t) => Some(Arc::new(t)),
                    Err(_) => return Row { status: "table_unavailable", bound_log10, ..Row::default() },
                },
                _ => None,
            };
            let policy = builtin_policy(policy, table).expect("table supplied when needed");
            let caps = match sim_caps(cfg) {
                Ok(c) => c,
                Err(_) => return Row { status: "invalid", bound_log10, ..Row::default() },
            };
            let reps = cfg.replications.unwrap_or(1000);
            let est = estimate_extinction(
                &graph,
                graph.vertices(),
                &policy,
                cell.r,
                reps,
                seed.wrapping_add(index),
                caps,
                execution(cfg),
            );
            match est {
                Ok(est) => Row {
                    mean: est.mean_tau,
                    se: est.std_error,
                    censored: est.censored,
                    bound_log10,
                    status: if !est.is_usable() {
                        "censored"
                    } else if est.censored > 0 {
                        "partially_censored"
                    } else {
                        "ok"
                    },
                },
                Err(SimError::PolicyFault { .. }) => Row { status: "policy_fault", bound_log10, ..Row::default() },
                Err(_) => Row { status: "invalid", bound_log10, ..Row::default() },
            }
        }
    }
}

/// Completed rows by cell index, from a log written by an earlier run of
/// the same grid.
fn read_log(path: &std::path::Path, fingerprint: &str) -> anyhow::Result<HashMap<usize, String>> {
    let mut done = HashMap::new();
    let text = match fs::read_to_string(path) {
        Ok(t) => t,
        Err(e) if e.kind() == std::io::ErrorKind::NotFound => return Ok(done),
        Err(e) => return Err(e).with_context(|| format!("reading {}", path.display())),
    };
    let mut lines = text.lines();
    match lines.next() {
        None => return Ok(done),
        Some(first) if first == fingerprint => {}
        Some(_) => bail!("{} was written for a different sweep", path.display()),
    }
    for line in lines {
        // A torn final line from an interrupted run is simply redone.
        if let Some((idx, row)) = line.split_once('\t') {
            if let Ok(idx) = idx.parse() {
                done.insert(idx, row.to_string());
            }
        }
    }
    Ok(done)
}

pub fn cmd_sweep(cfg: &RunConfig) -> Result<Report, Failure> {
    let grid = cfg.sweep.clone().unwrap_or_default();
    let kind: GraphKind = grid.family.parse()?;
    let mode = match grid.mode.as_str() {
        "exact" => Mode::Exact,
        "simulate" => Mode::Simulate,
        other => return Err(anyhow!("unknown sweep mode '{other}' (exact, simulate)").into()),
    };
    let mut cells = Vec::new();
    for &n in &grid.ns {
        for &r in &grid.rs {
            for policy in &grid.policies {
                cells.push(Cell {
                    n,
                    r,
                    policy: policy.clone(),
                });
            }
        }
    }

    let mut fingerprint_cfg = cfg.clone();
    fingerprint_cfg.output = None;
    fingerprint_cfg.sequential = false;
    if let Some(s) = fingerprint_cfg.sweep.as_mut() {
        s.log = None;
    }
    let fingerprint = format!("# {}", fingerprint_cfg.to_json());
    let (mut done, mut log) = match &grid.log {
        Some(path) => {
            let done = read_log(path, &fingerprint)?;
            let fresh = done.is_empty();
            let mut file = OpenOptions::new()
                .create(true)
                .append(true)
                .open(path)
                .with_context(|| format!("opening {}", path.display()))?;
            if fresh {
                file.set_len(0).context("truncating sweep log")?;
                writeln!(file, "{fingerprint}").context("writing sweep log")?;
            }
            (done, Some(file))
        }
        None => (HashMap::new(), None),
    };

    let mut out = format!("{SWEEP_HEADER}\n");
    for (i, cell) in cells.iter().enumerate() {
        let line = match done.remove(&i) {
            Some(line) => line,
            None => {
                let row = run_cell(cfg, kind, mode, cell, i as u64);
                let label = if kind.is_random() {
                    format!("{kind}-n{}-s{}", cell.n, cfg.seed())
                } else {
                    format!("{kind}-n{}", cell.n)
                };
                let line = format!(
                    "{label},{},{},{},{},{},{},{},{},{}",
                    cell.n,
                    cell.r,
                    cell.policy,
                    grid.mode,
                    opt(row.mean),
                    opt(row.se),
                    row.censored,
                    opt(row.bound_log10),
                    row.status
                );
                if let Some(file) = log.as_mut() {
                    writeln!(file, "{i}\t{line}").context("writing sweep log")?;
                    file.flush().context("writing sweep log")?;
                }
                line
            }
        };
        out.push_str(&line);
        out.push('\n');
    }
    Ok(Report {
        stdout: out,
        failure: None,
    })
}
