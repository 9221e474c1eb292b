//! Crusades, CutWidth and resilience.
//!
//! A crusade is a sequence of bags in which every step removes at most one
//! vertex but may add any number. Its width is the largest cut met after the
//! first bag. The CutWidth `W` is the least width of a pure-removal crusade
//! from `V` to `∅`; the resilience `γ(A)` is the least width of any crusade
//! from `A` to `∅`.
//!
//! Exact tables are exponential in `n` and are built over bitmask-indexed
//! arrays of `u16`.

use std::fmt;

use thiserror::Error;

use crate::graph::{Graph, GraphError};
use crate::nodeset::NodeSet;

mod oracle;
mod table;

pub use oracle::{oracle_resilience, oracle_resilience_all, ORACLE_MAX_N};
pub use table::{
    cutwidth, cutwidth_crusade, improvement_bags, monotone_table, optimal_crusade, resilience, resilience_table,
    MonotoneTable, ResilienceTable, MONOTONE_MAX_N, RESILIENCE_MAX_N,
};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum EngineError {
    #[error("graph has {n} vertices, above the cap of {cap} for this computation")]
    SizeCap { n: usize, cap: usize },
    #[error("resilience is only defined here for connected graphs")]
    Disconnected,
    #[error("crusade step {step} removes {removed} vertices (at most 1 allowed)")]
    MalformedStep { step: usize, removed: usize },
    #[error("crusade has no bags")]
    EmptyCrusade,
    #[error("table was built for a different graph ({expected} vertices, got {got})")]
    TableMismatch { expected: usize, got: usize },
    #[error(transparent)]
    Graph(#[from] GraphError),
}

pub(crate) fn check_cap(g: &Graph, cap: usize) -> Result<(), EngineError> {
    if g.n() > cap {
        Err(EngineError::SizeCap { n: g.n(), cap })
    } else {
        Ok(())
    }
}

/// Width of a bag sequence: the largest cut over every bag but the first.
/// Fails if some step removes more than one vertex.
pub fn width(g: &Graph, bags: &[NodeSet]) -> Result<usize, EngineError> {
    if bags.is_empty() {
        return Err(EngineError::EmptyCrusade);
    }
    for &bag in bags {
        g.check_set(bag)?;
    }
    let mut widest = 0;
    for (step, pair) in bags.windows(2).enumerate() {
        let removed = pair[0].difference(pair[1]).len();
        if removed > 1 {
            return Err(EngineError::MalformedStep { step, removed });
        }
        widest = widest.max(g.cut(pair[1]));
    }
    Ok(widest)
}

/// A validated crusade together with its width.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Crusade {
    bags: Vec<NodeSet>,
    width: usize,
}

impl Crusade {
    pub fn new(g: &Graph, bags: Vec<NodeSet>) -> Result<Self, EngineError> {
        let width = width(g, &bags)?;
        Ok(Crusade { bags, width })
    }

    pub fn bags(&self) -> &[NodeSet] {
        &self.bags
    }

    pub fn width(&self) -> usize {
        self.width
    }

    pub fn start(&self) -> NodeSet {
        self.bags[0]
    }

    pub fn end(&self) -> NodeSet {
        *self.bags.last().expect("crusade is nonempty")
    }

    /// True when every bag after the first is a strict subset of its
    /// predecessor.
    pub fn is_monotone_after_first(&self) -> bool {
        self.bags
            .windows(2)
            .skip(1)
            .all(|w| w[1].is_subset(w[0]) && w[1] != w[0])
    }

    /// Parses the [`Display`](fmt::Display) format back.
    pub fn parse(g: &Graph, text: &str) -> Result<Self, EngineError> {
        let mut bags = Vec::new();
        for (i, line) in text.lines().map(str::trim).filter(|l| !l.is_empty()).enumerate() {
            let malformed = || {
                EngineError::Graph(GraphError::Malformed {
                    line: i + 1,
                    msg: format!("bad bag '{line}'"),
                })
            };
            let inner = line
                .strip_prefix('[')
                .and_then(|l| l.strip_suffix(']'))
                .ok_or_else(malformed)?;
            let mut bag = NodeSet::EMPTY;
            for tok in inner.split(',').map(str::trim).filter(|t| !t.is_empty()) {
                let v: usize = tok.parse().map_err(|_| malformed())?;
                if v >= g.n() {
                    return Err(GraphError::VertexOutOfRange { vertex: v, n: g.n() }.into());
                }
                bag = bag.union(NodeSet::singleton(v));
            }
            bags.push(bag);
        }
        Crusade::new(g, bags)
    }
}

/// One bag per line, each as a sorted bracketed list.
impl fmt::Display for Crusade {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        for bag in &self.bags {
            writeln!(f, "{bag}")?;
        }
        Ok(())
    }
}
