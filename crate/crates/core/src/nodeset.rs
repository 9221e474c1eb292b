//! Vertex subsets ("bags") packed into a single machine word.

use std::fmt;

/// Largest vertex count a [`NodeSet`] can address.
pub const MAX_VERTICES: usize = 64;

/// A subset of the vertices `0..n` of a graph with `n <= 64`.
///
/// The set does not know `n`; callers that build sets from untrusted input
/// should check them against the owning graph with
/// [`Graph::check_set`](crate::graph::Graph::check_set).
#[derive(Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Default)]
pub struct NodeSet(u64);

impl NodeSet {
    pub const EMPTY: NodeSet = NodeSet(0);

    #[inline]
    pub const fn from_bits(bits: u64) -> Self {
        NodeSet(bits)
    }

    #[inline]
    pub const fn bits(self) -> u64 {
        self.0
    }

    /// The full vertex set `{0, .., n-1}`.
    #[inline]
    pub fn full(n: usize) -> Self {
        debug_assert!(n <= MAX_VERTICES);
        if n == MAX_VERTICES {
            NodeSet(u64::MAX)
        } else {
            NodeSet((1u64 << n) - 1)
        }
    }

    #[inline]
    pub fn singleton(v: usize) -> Self {
        debug_assert!(v < MAX_VERTICES);
        NodeSet(1u64 << v)
    }

    pub fn from_vertices<I: IntoIterator<Item = usize>>(vertices: I) -> Self {
        vertices
            .into_iter()
            .fold(NodeSet::EMPTY, |acc, v| acc.union(NodeSet::singleton(v)))
    }

    #[inline]
    pub const fn len(self) -> usize {
        self.0.count_ones() as usize
    }

    #[inline]
    pub const fn is_empty(self) -> bool {
        self.0 == 0
    }

    #[inline]
    pub const fn contains(self, v: usize) -> bool {
        v < MAX_VERTICES && self.0 >> v & 1 == 1
    }

    #[inline]
    pub const fn union(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 | other.0)
    }

    #[inline]
    pub const fn intersection(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & other.0)
    }

    /// `self \ other`.
    #[inline]
    pub const fn difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 & !other.0)
    }

    #[inline]
    pub const fn symmetric_difference(self, other: NodeSet) -> NodeSet {
        NodeSet(self.0 ^ other.0)
    }

    /// Complement relative to `{0, .., n-1}`.
    #[inline]
    pub fn complement(self, n: usize) -> NodeSet {
        NodeSet::full(n).difference(self)
    }

    #[inline]
    pub const fn is_subset(self, other: NodeSet) -> bool {
        self.0 & !other.0 == 0
    }

    /// `A + v`. The vertex must not already be present.
    #[inline]
    pub fn with(self, v: usize) -> NodeSet {
        debug_assert!(!self.contains(v), "vertex {v} already in bag");
        NodeSet(self.0 | 1u64 << v)
    }

    /// `A - v`. The vertex must be present.
    #[inline]
    pub fn without(self, v: usize) -> NodeSet {
        debug_assert!(self.contains(v), "vertex {v} not in bag");
        NodeSet(self.0 & !(1u64 << v))
    }

    /// Lowest vertex id in the set.
    #[inline]
    pub fn first(self) -> Option<usize> {
        (self.0 != 0).then(|| self.0.trailing_zeros() as usize)
    }

    /// Vertices in increasing id order.
    pub fn iter(self) -> Iter {
        Iter(self.0)
    }

    /// Every subset of `self`, in increasing bitmask order.
    pub fn subsets(self) -> Subsets {
        Subsets {
            mask: self.0,
            next: Some(0),
        }
    }
}

impl fmt::Debug for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// Bracketed, comma separated, sorted vertex list: `[0,2,5]`.
impl fmt::Display for NodeSet {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str("[")?;
        for (i, v) in self.iter().enumerate() {
            if i > 0 {
                f.write_str(",")?;
            }
            write!(f, "{v}")?;
        }
        f.write_str("]")
    }
}

impl FromIterator<usize> for NodeSet {
    fn from_iter<I: IntoIterator<Item = usize>>(iter: I) -> Self {
        NodeSet::from_vertices(iter)
    }
}

impl IntoIterator for NodeSet {
    type Item = usize;
    type IntoIter = Iter;
    fn into_iter(self) -> Iter {
        self.iter()
    }
}

#[derive(Clone, Debug)]
pub struct Iter(u64);

impl Iterator for Iter {
    type Item = usize;

    #[inline]
    fn next(&mut self) -> Option<usize> {
        if self.0 == 0 {
            return None;
        }
        let v = self.0.trailing_zeros() as usize;
        self.0 &= self.0 - 1;
        Some(v)
    }

    fn size_hint(&self) -> (usize, Option<usize>) {
        let n = self.0.count_ones() as usize;
        (n, Some(n))
    }
}

impl ExactSizeIterator for Iter {}

#[derive(Clone, Debug)]
pub struct Subsets {
    mask: u64,
    next: Option<u64>,
}

impl Iterator for Subsets {
    type Item = NodeSet;

    fn next(&mut self) -> Option<NodeSet> {
        let cur = self.next?;
        self.next = if cur == self.mask {
            None
        } else {
            // standard "next submask in increasing order" step
            Some((cur | !self.mask).wrapping_add(1) & self.mask)
        };
        Some(NodeSet(cur))
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn set_algebra() {
        let a = NodeSet::from_vertices([0, 1, 3]);
        let b = NodeSet::from_vertices([1, 2]);
        assert_eq!(a.union(b), NodeSet::from_vertices([0, 1, 2, 3]));
        assert_eq!(a.difference(b), NodeSet::from_vertices([0, 3]));
        assert_eq!(a.symmetric_difference(b), NodeSet::from_vertices([0, 2, 3]));
        assert_eq!(a.len(), 3);
        assert_eq!(a.with(2).len(), 4);
        assert_eq!(a.without(0), NodeSet::from_vertices([1, 3]));
        assert_eq!(a.complement(5), NodeSet::from_vertices([2, 4]));
        assert!(NodeSet::from_vertices([1]).is_subset(a));
        assert_eq!(NodeSet::full(64).len(), 64);
    }

    #[test]
    fn display_is_sorted_bracket_list() {
        assert_eq!(NodeSet::from_vertices([5, 0, 2]).to_string(), "[0,2,5]");
        assert_eq!(NodeSet::EMPTY.to_string(), "[]");
    }

    #[test]
    fn subsets_enumerates_all_in_order() {
        let s = NodeSet::from_vertices([1, 3, 4]);
        let subs: Vec<u64> = s.subsets().map(NodeSet::bits).collect();
        assert_eq!(subs.len(), 8);
        assert!(subs.windows(2).all(|w| w[0] < w[1]));
        assert!(subs.iter().all(|&m| m & !s.bits() == 0));
        assert_eq!(NodeSet::EMPTY.subsets().count(), 1);
    }
}
