use std::io::{self, Write};

use num_rational::Rational64;

use super::{check_cap, Crusade, EngineError};
use crate::bounds::slack_e;
use crate::graph::Graph;
use crate::nodeset::NodeSet;

/// Default largest `n` for the monotone-width table (2^24 entries).
pub const MONOTONE_MAX_N: usize = 24;
/// Default largest `n` for the all-subsets resilience table.
pub const RESILIENCE_MAX_N: usize = 22;

/// Cut and monotone-tail width of every subset.
///
/// `g(∅) = 0` and `g(B) = min_{v∈B} max(c(B-v), g(B-v))`: the least width of
/// a pure-removal crusade from `B` to `∅`. `g(V)` is the CutWidth.
#[derive(Debug, Clone)]
pub struct MonotoneTable {
    n: usize,
    cut: Vec<u16>,
    tail: Vec<u16>,
}

impl MonotoneTable {
    pub fn build(g: &Graph) -> Result<Self, EngineError> {
        Self::build_capped(g, MONOTONE_MAX_N)
    }

    pub fn build_capped(g: &Graph, cap: usize) -> Result<Self, EngineError> {
        check_cap(g, cap)?;
        let cut = g.cut_table();
        let size = cut.len();
        let mut tail = vec![0u16; size];
        // Numeric order visits every B - v before B.
        for mask in 1..size {
            let set = NodeSet::from_bits(mask as u64);
            tail[mask] = set
                .iter()
                .map(|v| {
                    let rest = set.without(v).bits() as usize;
                    cut[rest].max(tail[rest])
                })
                .min()
                .expect("nonempty set");
        }
        Ok(MonotoneTable { n: g.n(), cut, tail })
    }

    pub fn n(&self) -> usize {
        self.n
    }

    #[inline]
    pub fn cut(&self, set: NodeSet) -> u16 {
        self.cut[set.bits() as usize]
    }

    /// Monotone-tail width `g(set)`.
    #[inline]
    pub fn tail(&self, set: NodeSet) -> u16 {
        self.tail[set.bits() as usize]
    }

    /// Width of the best crusade whose first step lands on `set` and
    /// which only removes vertices afterwards.
    #[inline]
    pub fn landing_cost(&self, set: NodeSet) -> u16 {
        let i = set.bits() as usize;
        self.cut[i].max(self.tail[i])
    }

    pub fn cutwidth(&self) -> u16 {
        self.tail[self.tail.len() - 1]
    }

    /// Appends `start` and then an optimal pure-removal sequence down to
    /// `∅`, always removing the lowest vertex that keeps the tail optimal.
    fn push_tail(&self, start: NodeSet, bags: &mut Vec<NodeSet>) {
        let mut bag = start;
        bags.push(bag);
        while !bag.is_empty() {
            let tail = self.tail(bag);
            let v = bag
                .iter()
                .find(|&v| self.landing_cost(bag.without(v)) == tail)
                .expect("monotone table is consistent");
            bag = bag.without(v);
            bags.push(bag);
        }
    }

    fn check_graph(&self, g: &Graph) -> Result<(), EngineError> {
        if g.n() != self.n {
            return Err(EngineError::TableMismatch {
                expected: self.n,
                got: g.n(),
            });
        }
        Ok(())
    }
}

pub fn monotone_table(g: &Graph) -> Result<MonotoneTable, EngineError> {
    MonotoneTable::build(g)
}

/// CutWidth `W` of `g`.
pub fn cutwidth(g: &Graph) -> Result<u16, EngineError> {
    Ok(MonotoneTable::build(g)?.cutwidth())
}

/// Pure-removal crusade from `V` to `∅` whose width is the CutWidth. Unlike
/// [`optimal_crusade`] this does not need `g` to be connected.
pub fn cutwidth_crusade(g: &Graph, table: &MonotoneTable) -> Result<Crusade, EngineError> {
    table.check_graph(g)?;
    let mut bags = Vec::with_capacity(g.n() + 1);
    table.push_tail(g.vertices(), &mut bags);
    let crusade = Crusade::new(g, bags)?;
    debug_assert_eq!(crusade.width(), table.cutwidth() as usize);
    Ok(crusade)
}

/// Resilience of a single bag from the monotone table.
///
/// Some optimal crusade from `A` makes one free first step to
/// `B = (A ∪ D) - v` (`D` outside `A`, `v` optional) and only removes
/// vertices afterwards, so `γ(A) = min_B max(c(B), g(B))`. Cost is
/// `2^{n-|A|} (|A|+1)`.
pub fn resilience(g: &Graph, a: NodeSet, table: &MonotoneTable) -> Result<u16, EngineError> {
    table.check_graph(g)?;
    g.check_set(a)?;
    if !g.is_connected() {
        return Err(EngineError::Disconnected);
    }
    if a.is_empty() {
        return Ok(0);
    }
    let outside = a.complement(g.n());
    let mut best = u16::MAX;
    for added in outside.subsets() {
        let base = a.union(added);
        best = best.min(table.landing_cost(base));
        for v in a {
            best = best.min(table.landing_cost(base.without(v)));
        }
    }
    Ok(best)
}

/// `γ` for every subset, plus the CutWidth and slack of the graph.
#[derive(Debug, Clone)]
pub struct ResilienceTable {
    monotone: MonotoneTable,
    gamma: Vec<u16>,
    max_degree: usize,
    /// `None` only for the one-vertex graph, where `Δ = 0`.
    slack: Option<Rational64>,
}

impl ResilienceTable {
    pub fn build(g: &Graph) -> Result<Self, EngineError> {
        Self::build_capped(g, RESILIENCE_MAX_N)
    }

    /// All-subsets version of [`resilience`]. With
    /// `H(S) = min_{B ⊇ S} max(c(B), g(B))` (a superset-minimum transform,
    /// `O(n 2^n)`), the candidate first steps from `A` are exactly the
    /// supersets of `A - v` for `v ∈ A`, so `γ(A) = min_{v∈A} H(A - v)`.
    pub fn build_capped(g: &Graph, cap: usize) -> Result<Self, EngineError> {
        check_cap(g, cap)?;
        if !g.is_connected() {
            return Err(EngineError::Disconnected);
        }
        let monotone = MonotoneTable::build_capped(g, cap)?;
        let size = 1usize << g.n();
        let mut best_superset: Vec<u16> = (0..size)
            .map(|m| monotone.landing_cost(NodeSet::from_bits(m as u64)))
            .collect();
        for bit in 0..g.n() {
            let step = 1usize << bit;
            for mask in 0..size {
                if mask & step == 0 {
                    best_superset[mask] = best_superset[mask].min(best_superset[mask | step]);
                }
            }
        }
        let mut gamma = vec![0u16; size];
        for (mask, slot) in gamma.iter_mut().enumerate().skip(1) {
            let set = NodeSet::from_bits(mask as u64);
            *slot = set
                .iter()
                .map(|v| best_superset[set.without(v).bits() as usize])
                .min()
                .expect("nonempty set");
        }
        let w = monotone.cutwidth() as i64;
        let slack = slack_e(g.n() as i64, g.max_degree() as i64, w).ok();
        Ok(ResilienceTable {
            monotone,
            gamma,
            max_degree: g.max_degree(),
            slack,
        })
    }

    pub fn n(&self) -> usize {
        self.monotone.n
    }

    #[inline]
    pub fn gamma(&self, set: NodeSet) -> u16 {
        self.gamma[set.bits() as usize]
    }

    pub fn gammas(&self) -> &[u16] {
        &self.gamma
    }

    pub fn monotone(&self) -> &MonotoneTable {
        &self.monotone
    }

    #[inline]
    pub fn cut(&self, set: NodeSet) -> u16 {
        self.monotone.cut(set)
    }

    pub fn cutwidth(&self) -> u16 {
        self.monotone.cutwidth()
    }

    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn slack(&self) -> Option<Rational64> {
        self.slack
    }

    /// CSV `bitmask,cardinality,cut,g,gamma`, one row per subset.
    pub fn write_csv<W: Write>(&self, mut out: W) -> io::Result<()> {
        writeln!(out, "bitmask,cardinality,cut,g,gamma")?;
        for (mask, gamma) in self.gamma.iter().enumerate() {
            let set = NodeSet::from_bits(mask as u64);
            writeln!(
                out,
                "{mask},{},{},{},{gamma}",
                set.len(),
                self.monotone.cut(set),
                self.monotone.tail(set)
            )?;
        }
        Ok(())
    }
}

pub fn resilience_table(g: &Graph) -> Result<ResilienceTable, EngineError> {
    ResilienceTable::build(g)
}

/// An optimal crusade from `a` to `∅` with one free first step followed by
/// strict removals.
///
/// Among optimal first steps the one removing the lowest vertex id wins
/// (steps removing nothing rank last), then the smallest bag bitmask. The
/// monotone tail removes the lowest vertex that keeps the tail optimal.
pub fn optimal_crusade(g: &Graph, a: NodeSet, table: &MonotoneTable) -> Result<Crusade, EngineError> {
    let target = resilience(g, a, table)?;
    if a.is_empty() {
        return Crusade::new(g, vec![a]);
    }
    let n = g.n();
    let outside = a.complement(n);
    let mut first: Option<(usize, NodeSet)> = None;
    let mut consider = |key: (usize, NodeSet)| {
        if key.1 != a
            && table.landing_cost(key.1) == target
            && first.is_none_or(|cur| (key.0, key.1.bits()) < (cur.0, cur.1.bits()))
        {
            first = Some(key);
        }
    };
    for added in outside.subsets() {
        let base = a.union(added);
        consider((n, base));
        for v in a {
            consider((v, base.without(v)));
        }
    }
    let (_, bag) = first.expect("an optimal first step different from the start exists");
    let mut bags = vec![a];
    table.push_tail(bag, &mut bags);
    let crusade = Crusade::new(g, bags)?;
    debug_assert_eq!(crusade.width(), target as usize);
    Ok(crusade)
}

/// Bags `A` with some `v ∈ A` such that `γ(A - v) < γ(A)`, in bitmask order.
pub fn improvement_bags(table: &ResilienceTable) -> Vec<NodeSet> {
    (0..table.gamma.len() as u64)
        .map(NodeSet::from_bits)
        .filter(|&a| {
            let ga = table.gamma(a);
            a.iter().any(|v| table.gamma(a.without(v)) < ga)
        })
        .collect()
}
