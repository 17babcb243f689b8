//! Vertex orderings: lexicographic BFS and elimination-ordering checks.
//!
//! Orderings are written `v1, ..., vn` left to right; position i is 0-based in
//! code. LBFS numbers vertices from the right (position n-1 is chosen first), so
//! the sequence it returns is ready to be tested as a perfect elimination
//! ordering, and the residual graph of `v` is induced by `v` and the vertices to
//! its right.

use crate::graph::{Graph, VertexSet};
use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

/// How an ordering was produced.
#[derive(Clone, Copy, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OrderKind {
    Lbfs,
    Candidate,
}

/// A permutation of the vertex ids of some graph.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct VertexOrder {
    seq: Vec<usize>,
    kind: OrderKind,
}

impl VertexOrder {
    /// Wrap a caller-supplied sequence; it must be a permutation of `0..n`.
    pub fn candidate(seq: Vec<usize>) -> Result<VertexOrder, String> {
        let n = seq.len();
        let mut seen = vec![false; n];
        for &v in &seq {
            if v >= n || seen[v] {
                return Err(format!("sequence is not a permutation of 0..{n}"));
            }
            seen[v] = true;
        }
        Ok(VertexOrder { seq, kind: OrderKind::Candidate })
    }

    pub(crate) fn lbfs_order(seq: Vec<usize>) -> VertexOrder {
        VertexOrder { seq, kind: OrderKind::Lbfs }
    }

    pub fn kind(&self) -> OrderKind {
        self.kind
    }

    pub fn len(&self) -> usize {
        self.seq.len()
    }

    pub fn is_empty(&self) -> bool {
        self.seq.is_empty()
    }

    pub fn as_slice(&self) -> &[usize] {
        &self.seq
    }

    /// Inverse permutation: `positions()[v]` is the position of vertex `v`.
    pub fn positions(&self) -> Vec<usize> {
        let mut pos = vec![0; self.seq.len()];
        for (i, &v) in self.seq.iter().enumerate() {
            pos[v] = i;
        }
        pos
    }
}

/// Outcome of an ordering check, with a structured counterexample on failure.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct OrderingReport<W> {
    pub holds: bool,
    pub witness: Option<W>,
}

impl<W> OrderingReport<W> {
    fn ok() -> Self {
        OrderingReport { holds: true, witness: None }
    }

    fn fail(w: W) -> Self {
        OrderingReport { holds: false, witness: Some(w) }
    }
}

/// Vertices `a`, `b`, `c` sit at ascending positions with `ac` an edge and `bc`
/// a non-edge, but no later `d` has `bd` an edge and `ad` a non-edge.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PStarViolation {
    pub a: usize,
    pub b: usize,
    pub c: usize,
}

/// `vertex` has the non-adjacent pair `(u, w)` among its later neighbors.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct PeoViolation {
    pub vertex: usize,
    pub pair: (usize, usize),
}

/// Why an ordering is not a strong elimination ordering.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum SeoViolation {
    /// `vertex` is not simple in its residual graph.
    NotSimple { vertex: usize },
    /// Later neighbors `j` then `k` of `vertex` violate the residual inclusion
    /// `N[j] subset-of N[k]`: `missing` is adjacent to `j` but not to `k`.
    Inclusion { vertex: usize, j: usize, k: usize, missing: usize },
}

/// Lexicographic breadth-first search with lowest-id tie-break.
pub fn lbfs(g: &Graph) -> VertexOrder {
    let priority: Vec<usize> = g.vertices().collect();
    lbfs_with_priority(g, &priority)
}

/// LBFS breaking label ties by a seeded random priority instead of lowest id.
pub fn lbfs_with_seed(g: &Graph, seed: u64) -> VertexOrder {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut ids: Vec<usize> = g.vertices().collect();
    ids.shuffle(&mut rng);
    // ids[r] holds the vertex with rank r; invert to a priority table.
    let mut priority = vec![0; g.vertex_count()];
    for (rank, &v) in ids.iter().enumerate() {
        priority[v] = rank;
    }
    lbfs_with_priority(g, &priority)
}

fn lbfs_with_priority(g: &Graph, priority: &[usize]) -> VertexOrder {
    let n = g.vertex_count();
    // Labels collect the (descending) positions of already-numbered neighbors;
    // lexicographic comparison on those sequences picks the next vertex.
    let mut labels: Vec<Vec<usize>> = vec![Vec::new(); n];
    let mut numbered = vec![false; n];
    let mut seq = vec![0; n];
    for i in (0..n).rev() {
        let mut best = usize::MAX;
        for v in 0..n {
            if numbered[v] {
                continue;
            }
            if best == usize::MAX
                || labels[v] > labels[best]
                || (labels[v] == labels[best] && priority[v] < priority[best])
            {
                best = v;
            }
        }
        seq[i] = best;
        numbered[best] = true;
        for u in g.neighbors(best).iter() {
            if !numbered[u] {
                labels[u].push(i + 1);
            }
        }
    }
    VertexOrder::lbfs_order(seq)
}

/// Check the LBFS exchange property: for positions a < b < c with `ac` an edge
/// and `bc` a non-edge, some d > c must have `bd` an edge and `ad` a non-edge.
pub fn check_p_star(g: &Graph, order: &VertexOrder) -> OrderingReport<PStarViolation> {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "ordering length must match vertex count");
    let seq = order.as_slice();
    let pos = order.positions();
    // last_fix[a][b]: rightmost position of a vertex adjacent to seq[b] but not
    // to (or equal to) seq[a]; the triple (a,b,c) is fine iff last_fix > c.
    let mut last_fix = vec![vec![None; n]; n];
    for b in 0..n {
        let vb = seq[b];
        for (a, fix_row) in last_fix.iter_mut().enumerate() {
            let va = seq[a];
            let mut d_set = g.neighbors(vb).difference(g.neighbors(va));
            d_set.remove(va);
            fix_row[b] = d_set.iter().map(|d| pos[d]).max();
        }
    }
    for c in 2..n {
        let vc = seq[c];
        for a in 0..c.saturating_sub(1) {
            if !g.has_edge(seq[a], vc) {
                continue;
            }
            for b in a + 1..c {
                if g.has_edge(seq[b], vc) {
                    continue;
                }
                if last_fix[a][b].is_none_or(|d| d <= c) {
                    return OrderingReport::fail(PStarViolation { a: seq[a], b: seq[b], c: vc });
                }
            }
        }
    }
    OrderingReport::ok()
}

/// Is `N(v)` a clique?
pub fn is_simplicial(g: &Graph, v: usize) -> bool {
    g.is_clique(g.neighbors(v))
}

/// Is `v` simple: can the closed neighborhoods of `N(v)` be ordered into an
/// inclusion chain?
pub fn is_simple(g: &Graph, v: usize) -> bool {
    is_simple_within(g, v, &VertexSet::full(g.vertex_count()))
}

/// Simplicity of `v` in the subgraph induced by `alive` (which must contain `v`).
pub(crate) fn is_simple_within(g: &Graph, v: usize, alive: &VertexSet) -> bool {
    let nbrs: Vec<usize> = g.neighbors(v).intersection(alive).iter().collect();
    // Closed neighborhoods restricted to alive; any chain must be ascending in
    // size, and equal-size members of a chain are equal sets, so sorting by size
    // and checking consecutive inclusions decides chain existence.
    let mut closed: Vec<VertexSet> = nbrs
        .iter()
        .map(|&x| {
            let mut s = g.neighbors(x).intersection(alive);
            s.insert(x);
            s
        })
        .collect();
    closed.sort_by_key(VertexSet::len);
    closed.windows(2).all(|w| w[0].is_subset_of(&w[1]))
}

/// Is the ordering a perfect elimination ordering: every vertex simplicial in
/// the subgraph induced by itself and the vertices after it?
pub fn is_perfect_elimination(g: &Graph, order: &VertexOrder) -> OrderingReport<PeoViolation> {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "ordering length must match vertex count");
    let mut alive = VertexSet::full(n);
    for &v in order.as_slice() {
        alive.remove(v);
        let later = g.neighbors(v).intersection(&alive);
        for u in later.iter() {
            let mut rest = later.clone();
            rest.remove(u);
            let missing = rest.difference(g.neighbors(u));
            if let Some(w) = missing.min() {
                return OrderingReport::fail(PeoViolation { vertex: v, pair: (u, w) });
            }
        }
    }
    OrderingReport::ok()
}

/// Is the ordering a strong elimination ordering: a simple elimination ordering
/// where, in each residual graph, earlier later-neighbors of the eliminated
/// vertex have closed neighborhoods contained in those of later ones?
pub fn is_strong_elimination(g: &Graph, order: &VertexOrder) -> OrderingReport<SeoViolation> {
    let n = g.vertex_count();
    assert_eq!(order.len(), n, "ordering length must match vertex count");
    let pos = order.positions();
    let mut alive = VertexSet::full(n);
    for &v in order.as_slice() {
        if !is_simple_within(g, v, &alive) {
            return OrderingReport::fail(SeoViolation::NotSimple { vertex: v });
        }
        let mut later: Vec<usize> = {
            let mut s = alive.clone();
            s.remove(v);
            s.intersect_with(g.neighbors(v));
            s.iter().collect()
        };
        later.sort_by_key(|&u| pos[u]);
        for (idx, &j) in later.iter().enumerate() {
            let mut nj = g.neighbors(j).intersection(&alive);
            nj.insert(j);
            for &k in &later[idx + 1..] {
                let mut nk = g.neighbors(k).intersection(&alive);
                nk.insert(k);
                if !nj.is_subset_of(&nk) {
                    let missing = nj.difference(&nk).min().unwrap();
                    return OrderingReport::fail(SeoViolation::Inclusion { vertex: v, j, k, missing });
                }
            }
        }
        alive.remove(v);
    }
    OrderingReport::ok()
}

/// Chordality verdict: a perfect elimination ordering, or an induced cycle of
/// length at least four.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum Chordality {
    Chordal(VertexOrder),
    HoleWitness(Vec<usize>),
}

impl Chordality {
    pub fn holds(&self) -> bool {
        matches!(self, Chordality::Chordal(_))
    }
}

/// Decide chordality by testing the LBFS ordering as a perfect elimination
/// ordering; on failure, recover an induced cycle of length >= 4.
pub fn is_chordal(g: &Graph) -> Chordality {
    let order = lbfs(g);
    if is_perfect_elimination(g, &order).holds {
        Chordality::Chordal(order)
    } else {
        let hole = find_induced_cycle(g, 4)
            .expect("a graph whose LBFS ordering is not a perfect elimination ordering has an induced cycle");
        Chordality::HoleWitness(hole)
    }
}

/// Find an induced cycle on at least `min_len >= 4` vertices, as a cyclic vertex
/// sequence, if one exists.
///
/// For each vertex v and non-adjacent pair u, w in N(v), a shortest u-w path in
/// the graph minus N[v] - {u, w} closes with v into an induced cycle; every
/// induced cycle of length >= 4 arises this way from any of its vertices.
pub(crate) fn find_induced_cycle(g: &Graph, min_len: usize) -> Option<Vec<usize>> {
    debug_assert!(min_len >= 4);
    let n = g.vertex_count();
    for v in g.vertices() {
        let nbrs: Vec<usize> = g.neighbors(v).to_vec();
        for (i, &u) in nbrs.iter().enumerate() {
            for &w in &nbrs[i + 1..] {
                if g.has_edge(u, w) {
                    continue;
                }
                let mut allowed = VertexSet::full(n);
                allowed.remove_all(g.neighbors(v));
                allowed.remove(v);
                allowed.insert(u);
                allowed.insert(w);
                if let Some(path) = shortest_path_within(g, u, w, &allowed) {
                    // Cycle v, u, ..., w: length = path length + 1 >= 4.
                    if path.len() + 1 >= min_len {
                        let mut cycle = vec![v];
                        cycle.extend(path);
                        return Some(cycle);
                    }
                }
            }
        }
    }
    None
}

/// BFS shortest path from `from` to `to` inside `allowed`, neighbors explored in
/// ascending id order for determinism. Returns the vertex list including both ends.
pub(crate) fn shortest_path_within(
    g: &Graph,
    from: usize,
    to: usize,
    allowed: &VertexSet,
) -> Option<Vec<usize>> {
    if !allowed.contains(from) || !allowed.contains(to) {
        return None;
    }
    let n = g.vertex_count();
    let mut parent = vec![usize::MAX; n];
    let mut seen = VertexSet::new(n);
    seen.insert(from);
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        if v == to {
            let mut path = vec![to];
            let mut cur = to;
            while cur != from {
                cur = parent[cur];
                path.push(cur);
            }
            path.reverse();
            return Some(path);
        }
        for u in g.neighbors(v).intersection(allowed).iter() {
            if !seen.contains(u) {
                seen.insert(u);
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

/// Strong chordality verdict: a simple elimination ordering, or the residual
/// vertex set in which no vertex is simple.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StrongChordality {
    StronglyChordal(VertexOrder),
    NoSimpleVertex(Vec<usize>),
}

impl StrongChordality {
    pub fn holds(&self) -> bool {
        matches!(self, StrongChordality::StronglyChordal(_))
    }
}

/// Greedy simple-vertex elimination (lowest id first). Simplicity is hereditary
/// on the class this decides, so greedy choice order cannot change the verdict.
pub fn is_strongly_chordal(g: &Graph) -> StrongChordality {
    let n = g.vertex_count();
    let mut alive = VertexSet::full(n);
    let mut seq = Vec::with_capacity(n);
    while !alive.is_empty() {
        let pick = alive.iter().find(|&v| is_simple_within(g, v, &alive));
        match pick {
            Some(v) => {
                seq.push(v);
                alive.remove(v);
            }
            None => return StrongChordality::NoSimpleVertex(alive.to_vec()),
        }
    }
    StrongChordality::StronglyChordal(VertexOrder { seq, kind: OrderKind::Candidate })
}
