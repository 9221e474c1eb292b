//! Undirected simple graphs on at most 64 vertices and their cut function.

use thiserror::Error;

use crate::nodeset::{NodeSet, MAX_VERTICES};

mod generate;
mod io;

pub use generate::{generate, GraphKind, CONNECT_RETRIES};
pub use io::{parse_graph, write_graph};

#[derive(Debug, Error, Clone, PartialEq, Eq)]
pub enum GraphError {
    #[error("graph must have between 1 and {MAX_VERTICES} vertices, got {0}")]
    VertexCount(usize),
    #[error("vertex {vertex} out of range for a graph on {n} vertices")]
    VertexOutOfRange { vertex: usize, n: usize },
    #[error("self-loop at vertex {0}")]
    SelfLoop(usize),
    #[error("duplicate edge ({0}, {1})")]
    DuplicateEdge(usize, usize),
    #[error("graph is disconnected")]
    Disconnected,
    #[error("malformed graph file at line {line}: {msg}")]
    Malformed { line: usize, msg: String },
    #[error("invalid generator parameters: {0}")]
    InvalidParameter(String),
    #[error("no connected sample after {0} attempts")]
    ConnectivityFailure(usize),
}

/// Whether construction rejects disconnected input.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Default)]
pub enum Connectivity {
    #[default]
    Required,
    Waived,
}

/// Immutable undirected simple graph with vertices `0..n`.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    /// Sorted, each pair with `u < v`.
    edges: Vec<(usize, usize)>,
    adjacency: Vec<NodeSet>,
    max_degree: usize,
    connected: bool,
}

impl Graph {
    pub fn new(
        n: usize,
        edges: impl IntoIterator<Item = (usize, usize)>,
        connectivity: Connectivity,
    ) -> Result<Self, GraphError> {
        if n == 0 || n > MAX_VERTICES {
            return Err(GraphError::VertexCount(n));
        }
        let mut adjacency = vec![NodeSet::EMPTY; n];
        let mut list = Vec::new();
        for (a, b) in edges {
            for vertex in [a, b] {
                if vertex >= n {
                    return Err(GraphError::VertexOutOfRange { vertex, n });
                }
            }
            if a == b {
                return Err(GraphError::SelfLoop(a));
            }
            let (u, v) = if a < b { (a, b) } else { (b, a) };
            if adjacency[u].contains(v) {
                return Err(GraphError::DuplicateEdge(u, v));
            }
            adjacency[u] = adjacency[u].with(v);
            adjacency[v] = adjacency[v].with(u);
            list.push((u, v));
        }
        list.sort_unstable();
        let max_degree = adjacency.iter().map(|s| s.len()).max().unwrap_or(0);
        let mut g = Graph {
            n,
            edges: list,
            adjacency,
            max_degree,
            connected: false,
        };
        g.connected = g.component_of(0) == NodeSet::full(n);
        if connectivity == Connectivity::Required && !g.connected {
            return Err(GraphError::Disconnected);
        }
        Ok(g)
    }

    /// Builds a graph from an upper-triangle edge mask, bit `k` standing for
    /// the `k`-th pair in `(0,1), (0,2), .., (1,2), ..` order.
    pub fn from_pair_mask(n: usize, mask: u64, connectivity: Connectivity) -> Result<Self, GraphError> {
        let mut edges = Vec::new();
        let mut k = 0;
        for u in 0..n {
            for v in u + 1..n {
                if mask >> k & 1 == 1 {
                    edges.push((u, v));
                }
                k += 1;
            }
        }
        Graph::new(n, edges, connectivity)
    }

    #[inline]
    pub fn n(&self) -> usize {
        self.n
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    #[inline]
    pub fn neighbors(&self, v: usize) -> NodeSet {
        self.adjacency[v]
    }

    #[inline]
    pub fn degree(&self, v: usize) -> usize {
        self.adjacency[v].len()
    }

    /// Maximum vertex degree Δ.
    #[inline]
    pub fn max_degree(&self) -> usize {
        self.max_degree
    }

    pub fn is_connected(&self) -> bool {
        self.connected
    }

    #[inline]
    pub fn vertices(&self) -> NodeSet {
        NodeSet::full(self.n)
    }

    /// Rejects sets containing vertex ids `>= n`.
    pub fn check_set(&self, set: NodeSet) -> Result<NodeSet, GraphError> {
        match set.difference(self.vertices()).first() {
            Some(vertex) => Err(GraphError::VertexOutOfRange { vertex, n: self.n }),
            None => Ok(set),
        }
    }

    fn component_of(&self, start: usize) -> NodeSet {
        let mut seen = NodeSet::singleton(start);
        let mut frontier = seen;
        while !frontier.is_empty() {
            let next = frontier
                .iter()
                .fold(NodeSet::EMPTY, |acc, v| acc.union(self.adjacency[v]));
            frontier = next.difference(seen);
            seen = seen.union(frontier);
        }
        seen
    }

    /// Number of edges with exactly one endpoint in `set`.
    #[inline]
    pub fn cut(&self, set: NodeSet) -> usize {
        set.iter()
            .map(|v| self.adjacency[v].difference(set).len())
            .sum()
    }

    /// Cut of `set + v` given `cut(set)`.
    #[inline]
    pub fn cut_after_add(&self, set: NodeSet, cut: usize, v: usize) -> usize {
        let inside = self.adjacency[v].intersection(set).len();
        cut + self.degree(v) - 2 * inside
    }

    /// Cut of `set - v` given `cut(set)`.
    #[inline]
    pub fn cut_after_remove(&self, set: NodeSet, cut: usize, v: usize) -> usize {
        let inside = self.adjacency[v].intersection(set.without(v)).len();
        cut + 2 * inside - self.degree(v)
    }

    /// `cut(S)` for every `S ⊆ V`, indexed by bitmask. Built incrementally
    /// from `S` minus its lowest vertex.
    pub fn cut_table(&self) -> Vec<u16> {
        let size = 1usize << self.n;
        let mut table = vec![0u16; size];
        for mask in 1..size {
            let set = NodeSet::from_bits(mask as u64);
            let v = mask.trailing_zeros() as usize;
            let rest = set.without(v);
            let c = self.cut_after_add(rest, table[rest.bits() as usize] as usize, v);
            table[mask] = c as u16;
        }
        table
    }

    /// Short human label used in reports, e.g. `n6m7`.
    pub fn label(&self) -> String {
        format!("n{}m{}", self.n, self.edges.len())
    }
}
