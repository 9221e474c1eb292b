use std::time::{Duration, Instant};

use super::{simulate_replication, CuringPolicy, SimCaps, SimError};
use crate::exec::Execution;
use crate::graph::Graph;
use crate::nodeset::NodeSet;
use crate::stats::MeanEstimate;

/// Monte Carlo estimate of `E[τ]`. Censored runs are counted, never
/// averaged in.
#[derive(Debug, Clone, PartialEq)]
pub struct SimEstimate {
    pub replications: u64,
    pub censored: u64,
    /// Mean over uncensored runs; `None` if every run was censored.
    pub mean_tau: Option<f64>,
    /// Sample standard deviation over `sqrt(uncensored)`; `None` with fewer
    /// than two uncensored runs.
    pub std_error: Option<f64>,
    pub runtime: Duration,
}

impl SimEstimate {
    pub fn uncensored(&self) -> u64 {
        self.replications - self.censored
    }

    /// False when every replication was censored.
    pub fn is_usable(&self) -> bool {
        self.mean_tau.is_some()
    }

    pub fn as_mean(&self) -> Option<MeanEstimate> {
        self.mean_tau.map(|mean| MeanEstimate {
            count: self.uncensored() as usize,
            mean,
            std_error: self.std_error,
        })
    }
}

/// Runs `replications` independent copies (replication `i` seeded from
/// `(seed, i)`) and aggregates their extinction times in index order, so
/// the result does not depend on `exec`.
#[allow(clippy::too_many_arguments)]
pub fn estimate_extinction(
    g: &Graph,
    initial: NodeSet,
    policy: &dyn CuringPolicy,
    budget: f64,
    replications: u64,
    seed: u64,
    caps: SimCaps,
    exec: Execution,
) -> Result<SimEstimate, SimError> {
    if replications == 0 {
        return Err(SimError::InvalidInput("replications must be >= 1".into()));
    }
    let started = Instant::now();
    let runs = exec.map_indexed(replications, |i| {
        simulate_replication(g, initial, policy, budget, seed, i, caps, false).map(|t| t.tau())
    });
    let mut taus = Vec::with_capacity(runs.len());
    for run in runs {
        if let Some(tau) = run? {
            taus.push(tau);
        }
    }
    let censored = replications - taus.len() as u64;
    let mean = MeanEstimate::from_samples(&taus);
    Ok(SimEstimate {
        replications,
        censored,
        mean_tau: mean.map(|m| m.mean),
        std_error: mean.and_then(|m| m.std_error),
        runtime: started.elapsed(),
    })
}
