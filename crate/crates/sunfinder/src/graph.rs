//! Undirected simple graphs on dense vertex ids with bitset adjacency rows.

use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors raised while building a graph from user-supplied edges.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum GraphError {
    #[error("vertex id {id} out of range for graph on {n} vertices")]
    IdOutOfRange { id: usize, n: usize },
    #[error("self-loop at vertex {0} rejected")]
    SelfLoop(usize),
}

const WORD_BITS: usize = 64;

/// A set of vertex ids drawn from a fixed universe `0..n`, stored as machine words.
///
/// Intersection, union, difference and subset tests cost O(n/64) words.
#[derive(Clone, PartialEq, Eq, Hash)]
pub struct VertexSet {
    words: Vec<u64>,
    n: usize,
}

impl VertexSet {
    /// Empty set over universe `0..n`.
    pub fn new(n: usize) -> Self {
        VertexSet {
            words: vec![0; n.div_ceil(WORD_BITS)],
            n,
        }
    }

    /// The full universe `0..n`.
    pub fn full(n: usize) -> Self {
        let mut s = VertexSet::new(n);
        for v in 0..n {
            s.insert(v);
        }
        s
    }

    /// Build from an iterator of ids (all must be `< n`).
    pub fn from_iter(n: usize, it: impl IntoIterator<Item = usize>) -> Self {
        let mut s = VertexSet::new(n);
        for v in it {
            s.insert(v);
        }
        s
    }

    /// Universe size this set draws from.
    pub fn universe(&self) -> usize {
        self.n
    }

    pub fn insert(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / WORD_BITS] |= 1u64 << (v % WORD_BITS);
    }

    pub fn remove(&mut self, v: usize) {
        debug_assert!(v < self.n);
        self.words[v / WORD_BITS] &= !(1u64 << (v % WORD_BITS));
    }

    pub fn contains(&self, v: usize) -> bool {
        debug_assert!(v < self.n);
        self.words[v / WORD_BITS] >> (v % WORD_BITS) & 1 == 1
    }

    pub fn len(&self) -> usize {
        self.words.iter().map(|w| w.count_ones() as usize).sum()
    }

    pub fn is_empty(&self) -> bool {
        self.words.iter().all(|&w| w == 0)
    }

    /// Smallest member, if any.
    pub fn min(&self) -> Option<usize> {
        for (i, &w) in self.words.iter().enumerate() {
            if w != 0 {
                return Some(i * WORD_BITS + w.trailing_zeros() as usize);
            }
        }
        None
    }

    pub fn intersection(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & b).collect(),
            n: self.n,
        }
    }

    pub fn union(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a | b).collect(),
            n: self.n,
        }
    }

    /// Members of `self` not in `other`.
    pub fn difference(&self, other: &VertexSet) -> VertexSet {
        debug_assert_eq!(self.n, other.n);
        VertexSet {
            words: self.words.iter().zip(&other.words).map(|(a, b)| a & !b).collect(),
            n: self.n,
        }
    }

    pub fn intersect_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= b;
        }
    }

    pub fn union_with(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a |= b;
        }
    }

    pub fn remove_all(&mut self, other: &VertexSet) {
        debug_assert_eq!(self.n, other.n);
        for (a, b) in self.words.iter_mut().zip(&other.words) {
            *a &= !b;
        }
    }

    pub fn is_subset_of(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).all(|(a, b)| a & !b == 0)
    }

    pub fn intersects(&self, other: &VertexSet) -> bool {
        debug_assert_eq!(self.n, other.n);
        self.words.iter().zip(&other.words).any(|(a, b)| a & b != 0)
    }

    /// Size of the intersection without materializing it.
    pub fn intersection_len(&self, other: &VertexSet) -> usize {
        debug_assert_eq!(self.n, other.n);
        self.words
            .iter()
            .zip(&other.words)
            .map(|(a, b)| (a & b).count_ones() as usize)
            .sum()
    }

    /// Members in ascending order.
    pub fn iter(&self) -> impl Iterator<Item = usize> + '_ {
        self.words.iter().enumerate().flat_map(|(i, &w)| {
            let mut w = w;
            std::iter::from_fn(move || {
                if w == 0 {
                    None
                } else {
                    let b = w.trailing_zeros() as usize;
                    w &= w - 1;
                    Some(i * WORD_BITS + b)
                }
            })
        })
    }

    pub fn to_vec(&self) -> Vec<usize> {
        self.iter().collect()
    }
}

impl std::fmt::Debug for VertexSet {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.debug_set().entries(self.iter()).finish()
    }
}

/// An immutable undirected simple graph on vertices `0..n`.
#[derive(Clone, PartialEq, Eq)]
pub struct Graph {
    n: usize,
    m: usize,
    adj: Vec<VertexSet>,
}

impl Graph {
    /// Build a graph on `n` vertices from an edge list.
    ///
    /// Duplicate edges collapse; self-loops and out-of-range ids are errors.
    pub fn from_edges(n: usize, edges: &[(usize, usize)]) -> Result<Graph, GraphError> {
        let mut adj = vec![VertexSet::new(n); n];
        for &(u, v) in edges {
            if u >= n {
                return Err(GraphError::IdOutOfRange { id: u, n });
            }
            if v >= n {
                return Err(GraphError::IdOutOfRange { id: v, n });
            }
            if u == v {
                return Err(GraphError::SelfLoop(u));
            }
            adj[u].insert(v);
            adj[v].insert(u);
        }
        let m = adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Ok(Graph { n, m, adj })
    }

    /// Internal constructor from adjacency rows already known to be symmetric and loop-free.
    pub(crate) fn from_adjacency(adj: Vec<VertexSet>) -> Graph {
        let n = adj.len();
        debug_assert!((0..n).all(|v| !adj[v].contains(v)));
        debug_assert!((0..n).all(|v| adj[v].iter().all(|u| adj[u].contains(v))));
        let m = adj.iter().map(VertexSet::len).sum::<usize>() / 2;
        Graph { n, m, adj }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.m
    }

    pub fn vertices(&self) -> std::ops::Range<usize> {
        0..self.n
    }

    /// Edges as ascending `(u, v)` pairs with `u < v`.
    pub fn edges(&self) -> impl Iterator<Item = (usize, usize)> + '_ {
        (0..self.n).flat_map(move |u| self.adj[u].iter().filter(move |&v| v > u).map(move |v| (u, v)))
    }

    pub fn has_edge(&self, u: usize, v: usize) -> bool {
        assert!(u < self.n && v < self.n, "vertex id out of range");
        u != v && self.adj[u].contains(v)
    }

    /// Open neighborhood of `v`. Panics if `v` is out of range.
    pub fn neighbors(&self, v: usize) -> &VertexSet {
        assert!(v < self.n, "vertex id out of range");
        &self.adj[v]
    }

    pub fn degree(&self, v: usize) -> usize {
        self.neighbors(v).len()
    }

    /// Closed neighborhood `N(v) + v`.
    pub fn closed_neighbors(&self, v: usize) -> VertexSet {
        let mut s = self.neighbors(v).clone();
        s.insert(v);
        s
    }

    /// Vertices distinct from `v` and not adjacent to it.
    pub fn non_neighbors(&self, v: usize) -> VertexSet {
        assert!(v < self.n, "vertex id out of range");
        let mut s = VertexSet::full(self.n);
        s.remove_all(&self.adj[v]);
        s.remove(v);
        s
    }

    /// Subgraph induced by `keep`, plus the map from new ids to the old ones
    /// (ascending, so new id `i` is the i-th smallest member of `keep`).
    pub fn induced_subgraph(&self, keep: &VertexSet) -> (Graph, Vec<usize>) {
        assert_eq!(keep.universe(), self.n);
        let map = keep.to_vec();
        let mut back = vec![usize::MAX; self.n];
        for (new, &old) in map.iter().enumerate() {
            back[old] = new;
        }
        let mut adj = vec![VertexSet::new(map.len()); map.len()];
        for (new, &old) in map.iter().enumerate() {
            for u in self.adj[old].intersection(keep).iter() {
                adj[new].insert(back[u]);
            }
        }
        (Graph::from_adjacency(adj), map)
    }

    /// Does `s` induce a clique (edgeless and singleton sets count)?
    pub fn is_clique(&self, s: &VertexSet) -> bool {
        assert_eq!(s.universe(), self.n);
        s.iter().all(|v| {
            // Every other member of s must lie in N(v).
            let mut rest = s.clone();
            rest.remove(v);
            rest.is_subset_of(&self.adj[v])
        })
    }

    /// A copy of the graph with extra edges overlaid (ids must be in range, no loops).
    pub(crate) fn with_extra_edges(&self, extra: &[(usize, usize)]) -> Graph {
        let mut adj = self.adj.clone();
        for &(u, v) in extra {
            debug_assert!(u != v && u < self.n && v < self.n);
            adj[u].insert(v);
            adj[v].insert(u);
        }
        Graph::from_adjacency(adj)
    }

    /// Is the graph connected (true for the empty and one-vertex graph)?
    pub fn is_connected(&self) -> bool {
        if self.n <= 1 {
            return true;
        }
        let mut seen = VertexSet::new(self.n);
        seen.insert(0);
        let mut frontier = vec![0];
        while let Some(v) = frontier.pop() {
            for u in self.adj[v].iter() {
                if !seen.contains(u) {
                    seen.insert(u);
                    frontier.push(u);
                }
            }
        }
        seen.len() == self.n
    }
}

impl std::fmt::Debug for Graph {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        write!(f, "Graph(n={}, m={}, edges={:?})", self.n, self.m, self.edges().collect::<Vec<_>>())
    }
}

/// Serialized form used by certificate JSON output: vertex count plus edge list.
#[derive(Serialize, Deserialize)]
struct GraphRepr {
    n: usize,
    edges: Vec<(usize, usize)>,
}

impl Serialize for Graph {
    fn serialize<S: serde::Serializer>(&self, ser: S) -> Result<S::Ok, S::Error> {
        GraphRepr {
            n: self.n,
            edges: self.edges().collect(),
        }
        .serialize(ser)
    }
}

impl<'de> Deserialize<'de> for Graph {
    fn deserialize<D: serde::Deserializer<'de>>(de: D) -> Result<Graph, D::Error> {
        let repr = GraphRepr::deserialize(de)?;
        Graph::from_edges(repr.n, &repr.edges).map_err(serde::de::Error::custom)
    }
}
