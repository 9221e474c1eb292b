use std::path::{Path, PathBuf};

use anyhow::Context;
use serde::{Deserialize, Serialize};

pub const SEED_ENV: &str = "EPIGRAPH_SEED";
pub const DEFAULT_SEED: u64 = 42;

/// Everything a run depends on. A run re-executed from its echoed config
/// produces the same output bytes.
#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct RunConfig {
    pub command: String,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub graph: Option<GraphSource>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bag: Option<Vec<usize>>,
    /// Initially infected vertices; all of them when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub initial: Option<Vec<usize>>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub policy: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub r: Option<f64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub replications: Option<u64>,
    #[serde(default)]
    pub caps: Caps,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub output: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub table_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub bound_csv: Option<PathBuf>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub trace_dir: Option<PathBuf>,
    /// Replications (from index 0) whose traces are written to `trace_dir`.
    #[serde(default)]
    pub traces: u64,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub verify: Option<VerifySettings>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub sweep: Option<SweepGrid>,
    #[serde(default)]
    pub sequential: bool,
}

impl RunConfig {
    pub fn new(command: &str) -> Self {
        RunConfig {
            command: command.to_string(),
            graph: None,
            bag: None,
            initial: None,
            policy: None,
            r: None,
            replications: None,
            caps: Caps::default(),
            seed: None,
            output: None,
            table_csv: None,
            bound_csv: None,
            trace_dir: None,
            traces: 0,
            verify: None,
            sweep: None,
            sequential: false,
        }
    }

    pub fn load(path: &Path) -> anyhow::Result<Self> {
        let text = std::fs::read_to_string(path)
            .with_context(|| format!("reading config {}", path.display()))?;
        serde_json::from_str(&text).with_context(|| format!("parsing config {}", path.display()))
    }

    /// Fills the seed from `EPIGRAPH_SEED` or the default when unset.
    pub fn resolve_seed(&mut self) -> anyhow::Result<u64> {
        if self.seed.is_none() {
            self.seed = Some(match std::env::var(SEED_ENV) {
                Ok(v) => v
                    .trim()
                    .parse()
                    .with_context(|| format!("{SEED_ENV}={v:?} is not an unsigned integer"))?,
                Err(_) => DEFAULT_SEED,
            });
        }
        Ok(self.seed.expect("just set"))
    }

    pub fn seed(&self) -> u64 {
        self.seed.unwrap_or(DEFAULT_SEED)
    }

    pub fn to_json(&self) -> String {
        serde_json::to_string(self).expect("config serializes")
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize, Default)]
#[serde(deny_unknown_fields)]
pub struct GraphSource {
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub file: Option<PathBuf>,
    /// Generator family, e.g. `complete`, `grid:3`, `er:0.3`, `regular:3`.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub family: Option<String>,
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub n: Option<usize>,
    /// Generator seed for random families; the master seed when absent.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub seed: Option<u64>,
    #[serde(default)]
    pub waive_connectivity: bool,
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct Caps {
    pub max_time: f64,
    pub max_events: u64,
}

impl Default for Caps {
    fn default() -> Self {
        let d = epigraph::sim::SimCaps::default();
        Caps {
            max_time: d.max_time,
            max_events: d.max_events,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct VerifySettings {
    pub scope: String,
    pub exhaustive_max_n: usize,
    pub random_graphs: usize,
    pub random_sizes: Vec<usize>,
    pub walk_runs: u64,
    pub identity_tuples: usize,
}

impl Default for VerifySettings {
    fn default() -> Self {
        let d = epigraph::verify::SuiteConfig::default();
        VerifySettings {
            scope: "all".into(),
            exhaustive_max_n: d.exhaustive_max_n,
            random_graphs: d.random_graphs,
            random_sizes: d.random_sizes,
            walk_runs: d.walk_runs,
            identity_tuples: d.identity_tuples,
        }
    }
}

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct SweepGrid {
    pub family: String,
    pub ns: Vec<usize>,
    pub rs: Vec<f64>,
    pub policies: Vec<String>,
    /// `exact` (complete graphs only) or `simulate`.
    pub mode: String,
    /// Per-cell completion log; finished cells found there are not rerun.
    #[serde(default, skip_serializing_if = "Option::is_none")]
    pub log: Option<PathBuf>,
}

impl Default for SweepGrid {
    fn default() -> Self {
        SweepGrid {
            family: "complete".into(),
            ns: Vec::new(),
            rs: vec![1.0],
            policies: vec!["max_degree_infected".into()],
            mode: "exact".into(),
            log: None,
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn round_trips_through_json() {
        let mut c = RunConfig::new("simulate");
        c.graph = Some(GraphSource {
            family: Some("complete".into()),
            n: Some(3),
            ..GraphSource::default()
        });
        c.r = Some(1.5);
        c.seed = Some(9);
        c.sweep = Some(SweepGrid::default());
        let back: RunConfig = serde_json::from_str(&c.to_json()).unwrap();
        assert_eq!(back, c);
    }

    #[test]
    fn unknown_fields_are_rejected() {
        assert!(serde_json::from_str::<RunConfig>(r#"{"command":"gen","sed":1}"#).is_err());
        let minimal: RunConfig = serde_json::from_str(r#"{"command":"gen"}"#).unwrap();
        assert_eq!(minimal, RunConfig::new("gen"));
    }
}
