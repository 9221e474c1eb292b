//! Resilience by bottleneck shortest path over the full crusade graph.
//!
//! States are all `2^n` bags, the successors of `S` are every `B` with
//! `|S \ B| <= 1`, and entering `B` costs `c(B)`. `γ(A)` is the least
//! achievable maximum cost on a path from `A` to `∅`. Nothing about the
//! shape of optimal crusades is assumed, which makes this the reference the
//! table-based algorithm is tested against.

use std::cmp::Reverse;
use std::collections::BinaryHeap;

use super::{check_cap, EngineError};
use crate::graph::Graph;
use crate::nodeset::NodeSet;

/// Successor fan-out is `2^{n-|S|} (|S|+1)`, so keep this small.
pub const ORACLE_MAX_N: usize = 10;

/// γ(a) by forward minimax Dijkstra from `a`.
pub fn oracle_resilience(g: &Graph, a: NodeSet) -> Result<u16, EngineError> {
    check_cap(g, ORACLE_MAX_N)?;
    g.check_set(a)?;
    if !g.is_connected() {
        return Err(EngineError::Disconnected);
    }
    if a.is_empty() {
        return Ok(0);
    }
    let n = g.n();
    let cut = g.cut_table();
    let mut best = vec![u16::MAX; 1 << n];
    let mut done = vec![false; 1 << n];
    let mut heap = BinaryHeap::new();
    // The start bag's own cut is never paid.
    best[a.bits() as usize] = 0;
    heap.push(Reverse((0u16, a.bits())));
    while let Some(Reverse((cost, mask))) = heap.pop() {
        if done[mask as usize] {
            continue;
        }
        done[mask as usize] = true;
        if mask == 0 {
            return Ok(cost);
        }
        let s = NodeSet::from_bits(mask);
        for added in s.complement(n).subsets() {
            let base = s.union(added);
            let mut relax = |b: NodeSet| {
                let i = b.bits() as usize;
                let c = cost.max(cut[i]);
                if c < best[i] {
                    best[i] = c;
                    heap.push(Reverse((c, b.bits())));
                }
            };
            relax(base);
            for v in s {
                relax(base.without(v));
            }
        }
    }
    unreachable!("∅ is reachable from every bag")
}

/// γ for every bag at once: minimax Dijkstra backwards from `∅`.
///
/// `d(∅) = 0` and `d(S) = min_{|S\B|<=1} max(c(B), d(B))`. The predecessors
/// of `B` are its subsets and the sets `T + v` with `T ⊆ B`, `v ∉ B`.
pub fn oracle_resilience_all(g: &Graph) -> Result<Vec<u16>, EngineError> {
    check_cap(g, ORACLE_MAX_N)?;
    if !g.is_connected() {
        return Err(EngineError::Disconnected);
    }
    let n = g.n();
    let full = g.vertices();
    let cut = g.cut_table();
    let mut best = vec![u16::MAX; 1 << n];
    let mut done = vec![false; 1 << n];
    let mut heap = BinaryHeap::new();
    best[0] = 0;
    heap.push(Reverse((0u16, 0u64)));
    while let Some(Reverse((cost, mask))) = heap.pop() {
        if done[mask as usize] {
            continue;
        }
        done[mask as usize] = true;
        let b = NodeSet::from_bits(mask);
        let through = cost.max(cut[mask as usize]);
        let mut relax = |s: NodeSet| {
            let i = s.bits() as usize;
            if i != 0 && through < best[i] {
                best[i] = through;
                heap.push(Reverse((through, s.bits())));
            }
        };
        for kept in b.subsets() {
            relax(kept);
            for v in full.difference(b) {
                relax(kept.with(v));
            }
        }
    }
    Ok(best)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::{generate, GraphKind};

    #[test]
    fn examples() {
        let k4 = generate(GraphKind::Complete, 4, None).unwrap();
        assert_eq!(oracle_resilience(&k4, NodeSet::EMPTY).unwrap(), 0);
        assert_eq!(oracle_resilience(&k4, k4.vertices()).unwrap(), 4);
        assert_eq!(oracle_resilience(&k4, NodeSet::from_vertices([0, 1])).unwrap(), 3);
        assert_eq!(oracle_resilience(&k4, NodeSet::singleton(2)).unwrap(), 0);
    }

    #[test]
    fn forward_and_backward_agree() {
        for seed in 0..6 {
            let g = generate(GraphKind::ErdosRenyi { p: 0.4 }, 7, Some(seed)).unwrap();
            let all = oracle_resilience_all(&g).unwrap();
            for a in g.vertices().subsets() {
                assert_eq!(oracle_resilience(&g, a).unwrap(), all[a.bits() as usize]);
            }
        }
    }

    #[test]
    fn respects_cap() {
        let g = generate(GraphKind::Path, 11, None).unwrap();
        assert!(matches!(
            oracle_resilience(&g, NodeSet::EMPTY),
            Err(EngineError::SizeCap { n: 11, cap: 10 })
        ));
    }
}
