//! Event-driven simulation of the SIS process with budgeted curing.
//!
//! Infection rate is 1 per infected neighbour; curing rates come from a
//! [`CuringPolicy`] that is re-queried after every event, so rates are
//! constant between events and the jump process is sampled exactly.

use std::fmt;

use thiserror::Error;

use crate::graph::GraphError;
use crate::nodeset::NodeSet;

mod band;
mod engine;
mod estimate;
mod policy;

pub use band::{band_instrumentation, BandReport};
pub use engine::{simulate, simulate_replication, validate_trace};
pub use estimate::{estimate_extinction, SimEstimate};
pub use policy::{
    builtin_policy, Allocation, BuiltinPolicy, CuringPolicy, DecisionContext, PolicyKind,
};

#[derive(Debug, Error, Clone, PartialEq)]
pub enum SimError {
    #[error("policy '{policy}' fault at t={time}: {reason}")]
    PolicyFault {
        policy: String,
        time: f64,
        reason: String,
    },
    #[error("resilience_greedy needs a resilience table")]
    MissingTable,
    #[error("invalid input: {0}")]
    InvalidInput(String),
    #[error(transparent)]
    Graph(#[from] GraphError),
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum EventKind {
    Infect,
    Cure,
}

impl EventKind {
    pub fn as_str(self) -> &'static str {
        match self {
            EventKind::Infect => "infect",
            EventKind::Cure => "cure",
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub struct Event {
    pub time: f64,
    pub vertex: usize,
    pub kind: EventKind,
}

/// Run limits. Extinction can take astronomically long, so every run is
/// censored at one of these.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct SimCaps {
    pub max_time: f64,
    pub max_events: u64,
}

impl Default for SimCaps {
    fn default() -> Self {
        SimCaps {
            max_time: 1e6,
            max_events: 100_000_000,
        }
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum CensorReason {
    MaxTime,
    MaxEvents,
}

#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Outcome {
    Extinct { tau: f64 },
    Censored { at: f64, reason: CensorReason },
}

/// One run of the process.
#[derive(Debug, Clone, PartialEq)]
pub struct EpidemicTrace {
    pub seed: u64,
    pub replication: u64,
    pub initial: NodeSet,
    /// Empty when the run was not recording.
    pub events: Vec<Event>,
    pub event_count: u64,
    pub outcome: Outcome,
    pub final_infected: NodeSet,
}

impl EpidemicTrace {
    /// Extinction time, `None` if censored.
    pub fn tau(&self) -> Option<f64> {
        match self.outcome {
            Outcome::Extinct { tau } => Some(tau),
            Outcome::Censored { .. } => None,
        }
    }

    pub fn is_censored(&self) -> bool {
        matches!(self.outcome, Outcome::Censored { .. })
    }

    /// Time at which observation stopped.
    pub fn end_time(&self) -> f64 {
        match self.outcome {
            Outcome::Extinct { tau } => tau,
            Outcome::Censored { at, .. } => at,
        }
    }

    pub const CSV_HEADER: &'static str = "time,kind,vertex";
}

/// CSV `time,kind,vertex`, one line per event.
impl fmt::Display for EpidemicTrace {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        writeln!(f, "{}", Self::CSV_HEADER)?;
        for e in &self.events {
            writeln!(f, "{},{},{}", e.time, e.kind.as_str(), e.vertex)?;
        }
        Ok(())
    }
}
