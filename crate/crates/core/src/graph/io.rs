//! Plain-text edge list format.
//!
//! ```text
//! # optional comment lines
//! n m
//! u v      (m lines, 0 <= u < v < n)
//! ```
//!
//! Tokens are whitespace separated, lines end in LF. Blank lines and lines
//! starting with `#` are ignored.

use super::{Connectivity, Graph, GraphError};

pub fn parse_graph(text: &str, connectivity: Connectivity) -> Result<Graph, GraphError> {
    let mut lines = text
        .lines()
        .enumerate()
        .map(|(i, l)| (i + 1, l.trim()))
        .filter(|(_, l)| !l.is_empty() && !l.starts_with('#'));

    let malformed = |line: usize, msg: &str| GraphError::Malformed {
        line,
        msg: msg.to_string(),
    };

    let (hline, header) = lines.next().ok_or_else(|| malformed(1, "missing header"))?;
    let (n, m) = parse_pair(header).ok_or_else(|| malformed(hline, "header must be 'n m'"))?;

    let mut edges = Vec::with_capacity(m);
    for (line, text) in lines {
        let (u, v) = parse_pair(text).ok_or_else(|| malformed(line, "edge must be 'u v'"))?;
        if edges.len() == m {
            return Err(malformed(line, "more edges than declared in header"));
        }
        edges.push((u, v));
    }
    if edges.len() != m {
        return Err(malformed(
            hline,
            &format!("header declares {m} edges, found {}", edges.len()),
        ));
    }
    Graph::new(n, edges, connectivity)
}

fn parse_pair(line: &str) -> Option<(usize, usize)> {
    let mut it = line.split_whitespace();
    let a = it.next()?.parse().ok()?;
    let b = it.next()?.parse().ok()?;
    it.next().is_none().then_some((a, b))
}

pub fn write_graph(g: &Graph) -> String {
    let mut out = format!("{} {}\n", g.n(), g.edge_count());
    for &(u, v) in g.edges() {
        out.push_str(&format!("{u} {v}\n"));
    }
    out
}
