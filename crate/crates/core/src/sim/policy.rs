//! Curing policies: how the budget `r` is spread over infected vertices.

use std::fmt;
use std::str::FromStr;
use std::sync::Arc;

use rand::Rng;

use super::{Event, SimError};
use crate::crusade::ResilienceTable;
use crate::graph::Graph;
use crate::nodeset::NodeSet;
use crate::rng::SimRng;

/// What a policy sees when it is queried (after every event).
#[derive(Debug, Clone, Copy)]
pub struct DecisionContext<'a> {
    pub time: f64,
    pub infected: NodeSet,
    pub graph: &'a Graph,
    pub budget: f64,
    /// Events so far. Empty unless the run records events or the policy
    /// asks for history.
    pub history: &'a [Event],
}

/// `(vertex, curing rate)` pairs. Rates on healthy vertices are legal but
/// have no effect.
pub type Allocation = Vec<(usize, f64)>;

pub trait CuringPolicy: Sync {
    fn name(&self) -> String;

    /// Appends the allocation for the current state to `out` (which the
    /// caller clears). Rates must be non-negative and sum to at most the
    /// budget. Any randomness must come from `rng`.
    fn decide(&self, ctx: &DecisionContext<'_>, rng: &mut SimRng, out: &mut Allocation);

    fn needs_history(&self) -> bool {
        false
    }
}

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash)]
pub enum PolicyKind {
    /// Whole budget on a uniformly random infected vertex.
    RandomInfected,
    /// Whole budget on the infected vertex of highest degree.
    MaxDegreeInfected,
    /// Budget split over infected vertices in proportion to degree.
    DegreeProportional,
    /// Whole budget on the infected vertex whose removal lowers the cut most.
    MaxCutDrop,
    /// Whole budget on the infected vertex whose removal leaves the least
    /// resilience. Needs a resilience table.
    ResilienceGreedy,
    /// Never cures.
    None,
}

impl PolicyKind {
    pub const ALL: [PolicyKind; 6] = [
        PolicyKind::RandomInfected,
        PolicyKind::MaxDegreeInfected,
        PolicyKind::DegreeProportional,
        PolicyKind::MaxCutDrop,
        PolicyKind::ResilienceGreedy,
        PolicyKind::None,
    ];

    pub fn as_str(self) -> &'static str {
        match self {
            PolicyKind::RandomInfected => "random_infected",
            PolicyKind::MaxDegreeInfected => "max_degree_infected",
            PolicyKind::DegreeProportional => "degree_proportional",
            PolicyKind::MaxCutDrop => "max_cut_drop",
            PolicyKind::ResilienceGreedy => "resilience_greedy",
            PolicyKind::None => "none",
        }
    }
}

impl fmt::Display for PolicyKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(self.as_str())
    }
}

impl FromStr for PolicyKind {
    type Err = SimError;

    fn from_str(s: &str) -> Result<Self, SimError> {
        PolicyKind::ALL
            .into_iter()
            .find(|k| k.as_str() == s)
            .ok_or_else(|| SimError::InvalidInput(format!("unknown policy '{s}'")))
    }
}

#[derive(Debug, Clone)]
pub struct BuiltinPolicy {
    kind: PolicyKind,
    table: Option<Arc<ResilienceTable>>,
}

impl BuiltinPolicy {
    pub fn kind(&self) -> PolicyKind {
        self.kind
    }
}

/// Builds one of the built-in policies. `resilience_greedy` needs the γ
/// table of the graph it will run on.
pub fn builtin_policy(
    kind: PolicyKind,
    table: Option<Arc<ResilienceTable>>,
) -> Result<BuiltinPolicy, SimError> {
    if kind == PolicyKind::ResilienceGreedy && table.is_none() {
        return Err(SimError::MissingTable);
    }
    Ok(BuiltinPolicy { kind, table })
}

/// First vertex (lowest id) minimising `key`.
fn argmin_by_key<K: Ord>(set: NodeSet, mut key: impl FnMut(usize) -> K) -> Option<usize> {
    let mut best: Option<(K, usize)> = None;
    for v in set {
        let k = key(v);
        if best.as_ref().is_none_or(|(bk, _)| k < *bk) {
            best = Some((k, v));
        }
    }
    best.map(|(_, v)| v)
}

impl CuringPolicy for BuiltinPolicy {
    fn name(&self) -> String {
        self.kind.to_string()
    }

    fn decide(&self, ctx: &DecisionContext<'_>, rng: &mut SimRng, out: &mut Allocation) {
        let infected = ctx.infected;
        if infected.is_empty() || ctx.budget <= 0.0 {
            return;
        }
        let g = ctx.graph;
        let target = match self.kind {
            PolicyKind::None => None,
            PolicyKind::RandomInfected => infected.iter().nth(rng.random_range(0..infected.len())),
            PolicyKind::MaxDegreeInfected => {
                argmin_by_key(infected, |v| std::cmp::Reverse(g.degree(v)))
            }
            PolicyKind::MaxCutDrop => {
                let cut = g.cut(infected);
                argmin_by_key(infected, |v| g.cut_after_remove(infected, cut, v))
            }
            PolicyKind::ResilienceGreedy => {
                let table = self.table.as_ref().expect("checked at construction");
                argmin_by_key(infected, |v| table.gamma(infected.without(v)))
            }
            PolicyKind::DegreeProportional => {
                let total: usize = infected.iter().map(|v| g.degree(v)).sum();
                if total > 0 {
                    for v in infected {
                        let share = ctx.budget * g.degree(v) as f64 / total as f64;
                        if share > 0.0 {
                            out.push((v, share));
                        }
                    }
                }
                None
            }
        };
        if let Some(v) = target {
            out.push((v, ctx.budget));
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};
    use crate::rng;

    fn decide(p: &BuiltinPolicy, g: &Graph, infected: NodeSet, budget: f64) -> Allocation {
        let ctx = DecisionContext {
            time: 0.0,
            infected,
            graph: g,
            budget,
            history: &[],
        };
        let mut out = Vec::new();
        p.decide(&ctx, &mut rng::stream(0, 0), &mut out);
        out
    }

    #[test]
    fn resilience_greedy_ties_to_lowest_id() {
        let p3 = generate(GraphKind::Path, 3, None).unwrap();
        let table = Arc::new(ResilienceTable::build(&p3).unwrap());
        let p = builtin_policy(PolicyKind::ResilienceGreedy, Some(table)).unwrap();
        assert_eq!(decide(&p, &p3, NodeSet::from_vertices([0, 1]), 1.0), vec![(0, 1.0)]);
    }

    #[test]
    fn resilience_greedy_requires_table() {
        assert!(matches!(
            builtin_policy(PolicyKind::ResilienceGreedy, None),
            Err(SimError::MissingTable)
        ));
    }

    #[test]
    fn none_allocates_nothing() {
        let g = generate(GraphKind::Complete, 4, None).unwrap();
        let p = builtin_policy(PolicyKind::None, None).unwrap();
        assert!(decide(&p, &g, g.vertices(), 3.0).is_empty());
    }

    #[test]
    fn degree_proportional_split() {
        let star = generate(GraphKind::Star, 5, None).unwrap();
        let p = builtin_policy(PolicyKind::DegreeProportional, None).unwrap();
        let alloc = decide(&p, &star, NodeSet::from_vertices([0, 3]), 2.0);
        assert_eq!(alloc.len(), 2);
        assert!((alloc[0].1 - 2.0 * 4.0 / 5.0).abs() < 1e-15);
        assert!((alloc[1].1 - 2.0 / 5.0).abs() < 1e-15);
        assert_eq!((alloc[0].0, alloc[1].0), (0, 3));
    }

    #[test]
    fn one_node_policies() {
        let star = generate(GraphKind::Star, 5, None).unwrap();
        let infected = NodeSet::from_vertices([0, 2, 4]);
        let deg = builtin_policy(PolicyKind::MaxDegreeInfected, None).unwrap();
        assert_eq!(decide(&deg, &star, infected, 1.0), vec![(0, 1.0)]);
        // cut(I) = 2; dropping the centre keeps it at 2, dropping a leaf raises it to 3
        let drop = builtin_policy(PolicyKind::MaxCutDrop, None).unwrap();
        assert_eq!(decide(&drop, &star, infected, 1.0), vec![(0, 1.0)]);
        let path = generate(GraphKind::Path, 5, None).unwrap();
        // I = {1,2,3}: dropping an end keeps the cut at 2, dropping the middle gives 4
        assert_eq!(decide(&drop, &path, NodeSet::from_vertices([1, 2, 3]), 1.0), vec![(1, 1.0)]);
        let random = builtin_policy(PolicyKind::RandomInfected, None).unwrap();
        let alloc = decide(&random, &star, infected, 1.5);
        assert_eq!(alloc.len(), 1);
        assert!(infected.contains(alloc[0].0));
        assert_eq!(alloc[0].1, 1.5);
    }

    #[test]
    fn every_builtin_respects_budget_and_cures_only_infected() {
        let g = generate(GraphKind::ErdosRenyi { p: 0.4 }, 8, Some(5)).unwrap();
        let table = Arc::new(ResilienceTable::build(&g).unwrap());
        for kind in PolicyKind::ALL {
            let p = builtin_policy(kind, Some(table.clone())).unwrap();
            for bits in 0..256u64 {
                let infected = NodeSet::from_bits(bits);
                let alloc = decide(&p, &g, infected, 2.5);
                let total: f64 = alloc.iter().map(|a| a.1).sum();
                assert!(total <= 2.5 + 1e-12);
                assert!(alloc.iter().all(|&(v, r)| infected.contains(v) && r >= 0.0));
            }
        }
    }

    #[test]
    fn names_parse_back() {
        for kind in PolicyKind::ALL {
            assert_eq!(kind.as_str().parse::<PolicyKind>().unwrap(), kind);
        }
        assert!("cure_everyone".parse::<PolicyKind>().is_err());
    }
}
