use std::fmt;
use std::str::FromStr;

use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;

use super::{Connectivity, Graph, GraphError};
use crate::nodeset::MAX_VERTICES;

/// Attempts a random generator makes before reporting a connectivity failure.
pub const CONNECT_RETRIES: usize = 1000;

/// Graph families understood by [`generate`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum GraphKind {
    Complete,
    Path,
    Cycle,
    Star,
    /// `rows x (n / rows)` lattice.
    Grid { rows: usize },
    ErdosRenyi { p: f64 },
    RandomRegular { d: usize },
}

impl GraphKind {
    pub fn is_random(&self) -> bool {
        matches!(self, GraphKind::ErdosRenyi { .. } | GraphKind::RandomRegular { .. })
    }
}

/// Formats as the family string accepted by `FromStr`: `complete`, `grid:3`,
/// `er:0.3`, `regular:3`, ...
impl fmt::Display for GraphKind {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        match self {
            GraphKind::Complete => f.write_str("complete"),
            GraphKind::Path => f.write_str("path"),
            GraphKind::Cycle => f.write_str("cycle"),
            GraphKind::Star => f.write_str("star"),
            GraphKind::Grid { rows } => write!(f, "grid:{rows}"),
            GraphKind::ErdosRenyi { p } => write!(f, "er:{p}"),
            GraphKind::RandomRegular { d } => write!(f, "regular:{d}"),
        }
    }
}

impl FromStr for GraphKind {
    type Err = GraphError;

    fn from_str(s: &str) -> Result<Self, GraphError> {
        let bad = || GraphError::InvalidParameter(format!("unknown graph kind '{s}'"));
        let (name, arg) = match s.split_once(':') {
            Some((name, arg)) => (name, Some(arg)),
            None => (s, None),
        };
        let kind = match (name, arg) {
            ("complete", None) => GraphKind::Complete,
            ("path", None) => GraphKind::Path,
            ("cycle", None) => GraphKind::Cycle,
            ("star", None) => GraphKind::Star,
            ("grid", Some(a)) => GraphKind::Grid {
                rows: a.parse().map_err(|_| bad())?,
            },
            ("er" | "erdos_renyi", Some(a)) => GraphKind::ErdosRenyi {
                p: a.parse().map_err(|_| bad())?,
            },
            ("regular" | "random_regular", Some(a)) => GraphKind::RandomRegular {
                d: a.parse().map_err(|_| bad())?,
            },
            _ => return Err(bad()),
        };
        Ok(kind)
    }
}

fn invalid(msg: impl Into<String>) -> GraphError {
    GraphError::InvalidParameter(msg.into())
}

/// Builds a connected member of `kind` on `n` vertices. Random kinds need a
/// seed and resample until connected, at most [`CONNECT_RETRIES`] times.
pub fn generate(kind: GraphKind, n: usize, seed: Option<u64>) -> Result<Graph, GraphError> {
    if !(2..=MAX_VERTICES).contains(&n) {
        return Err(invalid(format!("n must be in 2..={MAX_VERTICES}, got {n}")));
    }
    let required = Connectivity::Required;
    match kind {
        GraphKind::Complete => {
            let edges = (0..n).flat_map(|u| (u + 1..n).map(move |v| (u, v)));
            Graph::new(n, edges, required)
        }
        GraphKind::Path => Graph::new(n, (0..n - 1).map(|i| (i, i + 1)), required),
        GraphKind::Cycle => {
            if n < 3 {
                return Err(invalid("cycle needs n >= 3"));
            }
            Graph::new(n, (0..n).map(|i| (i, (i + 1) % n)), required)
        }
        GraphKind::Star => Graph::new(n, (1..n).map(|i| (0, i)), required),
        GraphKind::Grid { rows } => {
            if rows == 0 || !n.is_multiple_of(rows) {
                return Err(invalid(format!("grid rows {rows} must divide n={n}")));
            }
            let cols = n / rows;
            let id = |r: usize, c: usize| r * cols + c;
            let mut edges = Vec::new();
            for r in 0..rows {
                for c in 0..cols {
                    if c + 1 < cols {
                        edges.push((id(r, c), id(r, c + 1)));
                    }
                    if r + 1 < rows {
                        edges.push((id(r, c), id(r + 1, c)));
                    }
                }
            }
            Graph::new(n, edges, required)
        }
        GraphKind::ErdosRenyi { p } => {
            if !(p > 0.0 && p <= 1.0) {
                return Err(invalid(format!("edge probability must be in (0, 1], got {p}")));
            }
            let mut rng = seeded(seed)?;
            for _ in 0..CONNECT_RETRIES {
                let mut edges = Vec::new();
                for u in 0..n {
                    for v in u + 1..n {
                        if rng.random_bool(p) {
                            edges.push((u, v));
                        }
                    }
                }
                if let Ok(g) = Graph::new(n, edges, required) {
                    return Ok(g);
                }
            }
            Err(GraphError::ConnectivityFailure(CONNECT_RETRIES))
        }
        GraphKind::RandomRegular { d } => {
            if d == 0 || d >= n || !(n * d).is_multiple_of(2) {
                return Err(invalid(format!(
                    "random regular needs 0 < d < n and n*d even (n={n}, d={d})"
                )));
            }
            if d == 1 && n > 2 {
                return Err(invalid("a 1-regular graph on more than 2 vertices is disconnected"));
            }
            let mut rng = seeded(seed)?;
            for _ in 0..CONNECT_RETRIES {
                if let Some(edges) = regular_pairing(n, d, &mut rng) {
                    if let Ok(g) = Graph::new(n, edges, required) {
                        return Ok(g);
                    }
                }
            }
            Err(GraphError::ConnectivityFailure(CONNECT_RETRIES))
        }
    }
}

fn seeded(seed: Option<u64>) -> Result<ChaCha8Rng, GraphError> {
    seed.map(ChaCha8Rng::seed_from_u64)
        .ok_or_else(|| invalid("random graph kinds require a seed"))
}

/// One attempt at a simple d-regular pairing: stubs are matched at random,
/// only accepting pairs that create neither a loop nor a repeated edge.
/// Returns `None` when the remaining stubs cannot be completed.
fn regular_pairing(n: usize, d: usize, rng: &mut ChaCha8Rng) -> Option<Vec<(usize, usize)>> {
    let mut stubs: Vec<usize> = (0..n).flat_map(|v| std::iter::repeat_n(v, d)).collect();
    stubs.shuffle(rng);
    let mut adj = vec![0u64; n];
    let mut edges = Vec::with_capacity(n * d / 2);
    let ok = |adj: &[u64], a: usize, b: usize| a != b && adj[a] >> b & 1 == 0;
    while !stubs.is_empty() {
        let mut found = None;
        for _ in 0..64 {
            let i = rng.random_range(0..stubs.len());
            let j = rng.random_range(0..stubs.len());
            if i != j && ok(&adj, stubs[i], stubs[j]) {
                found = Some((i, j));
                break;
            }
        }
        if found.is_none() {
            'scan: for i in 0..stubs.len() {
                for j in i + 1..stubs.len() {
                    if ok(&adj, stubs[i], stubs[j]) {
                        found = Some((i, j));
                        break 'scan;
                    }
                }
            }
        }
        let (i, j) = found?;
        let (a, b) = (stubs[i], stubs[j]);
        adj[a] |= 1 << b;
        adj[b] |= 1 << a;
        edges.push((a.min(b), a.max(b)));
        let (hi, lo) = if i > j { (i, j) } else { (j, i) };
        stubs.swap_remove(hi);
        stubs.swap_remove(lo);
    }
    Some(edges)
}
