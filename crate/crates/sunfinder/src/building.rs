//! Detectors for buildings, gems, bulls with a given nose, and near buildings.
//!
//! A building is a hole (induced cycle on at least five vertices) plus exactly
//! one extra edge joining the two hole-neighbors of one vertex, the apex; the
//! five-vertex case is the house. Detection scans apex candidates: for an apex
//! v and an adjacent pair x, y in N(v), delete v's other neighbors, v itself,
//! and all common neighbors of x and y; any remaining x-y path (ignoring the
//! edge xy) closes into a hole through v with xy as the chord.

use crate::graph::{Graph, VertexSet};
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// A certificate produced by a detector failed independent re-validation.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("invalid {kind} certificate: {reason}")]
pub struct CertificateError {
    pub kind: &'static str,
    pub reason: String,
}

pub(crate) fn cert_err(kind: &'static str, reason: impl Into<String>) -> CertificateError {
    CertificateError { kind, reason: reason.into() }
}

pub(crate) fn all_distinct(vs: impl IntoIterator<Item = usize>) -> bool {
    let mut seen = std::collections::HashSet::new();
    vs.into_iter().all(|v| seen.insert(v))
}

/// A building: `hole` is the cyclic vertex sequence starting at the apex, and
/// `chord` joins the apex's two hole-neighbors (`hole[1]` and `hole.last()`).
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct BuildingCertificate {
    pub apex: usize,
    pub hole: Vec<usize>,
    pub chord: (usize, usize),
}

impl BuildingCertificate {
    /// Re-check the certificate against `g` without trusting the detector.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "building";
        let k = self.hole.len();
        if k < 5 {
            return Err(cert_err(kind, format!("hole has {k} vertices, need at least 5")));
        }
        if self.hole.iter().any(|&v| v >= g.vertex_count()) {
            return Err(cert_err(kind, "vertex id out of range"));
        }
        if !all_distinct(self.hole.iter().copied()) {
            return Err(cert_err(kind, "repeated vertex in hole"));
        }
        if self.apex != self.hole[0] {
            return Err(cert_err(kind, "apex must be the first hole vertex"));
        }
        let (a, b) = (self.hole[1], self.hole[k - 1]);
        if self.chord != (a.min(b), a.max(b)) {
            return Err(cert_err(kind, "chord must join the apex's two hole-neighbors"));
        }
        for i in 0..k {
            for j in i + 1..k {
                let consecutive = j == i + 1 || (i == 0 && j == k - 1);
                let is_chord_pair = (i, j) == (1, k - 1);
                let expected = consecutive || is_chord_pair;
                if g.has_edge(self.hole[i], self.hole[j]) != expected {
                    return Err(cert_err(
                        kind,
                        format!("pair ({}, {}) breaks the hole-plus-one-chord shape", self.hole[i], self.hole[j]),
                    ));
                }
            }
        }
        Ok(())
    }
}

/// BFS shortest path from `from` to `to` inside `allowed`, never taking the
/// direct edge `from`-`to`. Neighbors explored in ascending order.
fn shortest_path_avoiding_edge(
    g: &Graph,
    from: usize,
    to: usize,
    allowed: &VertexSet,
) -> Option<Vec<usize>> {
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
            if v == from && u == to {
                continue;
            }
            if !seen.contains(u) {
                seen.insert(u);
                parent[u] = v;
                queue.push_back(u);
            }
        }
    }
    None
}

fn building_at(g: &Graph, v: usize, x: usize, y: usize) -> Option<BuildingCertificate> {
    debug_assert!(x < y && g.has_edge(x, y) && g.has_edge(v, x) && g.has_edge(v, y));
    let n = g.vertex_count();
    let mut allowed = VertexSet::full(n);
    allowed.remove_all(g.neighbors(v));
    allowed.remove(v);
    allowed.remove_all(&g.neighbors(x).intersection(g.neighbors(y)));
    allowed.insert(x);
    allowed.insert(y);
    let path = shortest_path_avoiding_edge(g, x, y, &allowed)?;
    // Common neighbors of x and y are gone, so the path has >= 2 interior-free
    // edges and the cycle v, x, ..., y is a hole of length >= 5 with chord xy.
    debug_assert!(path.len() >= 4);
    let mut hole = vec![v];
    hole.extend(path);
    Some(BuildingCertificate { apex: v, hole, chord: (x, y) })
}

/// Find a building as an induced subgraph, or none if the graph is building-free.
///
/// Apexes are scanned in ascending id order and adjacent pairs in ascending
/// `(x, y)` order, so the certificate is canonical for a given graph.
pub fn find_building(g: &Graph) -> Option<BuildingCertificate> {
    for v in g.vertices() {
        let nbrs = g.neighbors(v).to_vec();
        for (i, &x) in nbrs.iter().enumerate() {
            for &y in &nbrs[i + 1..] {
                if !g.has_edge(x, y) {
                    continue;
                }
                if let Some(cert) = building_at(g, v, x, y) {
                    return Some(cert);
                }
            }
        }
    }
    None
}

/// All triangles, each reported once as an ascending triple, list sorted.
pub fn list_triangles(g: &Graph) -> Vec<[usize; 3]> {
    let n = g.vertex_count();
    // Orient each edge from lower (degree, id) to higher and intersect forward
    // neighborhoods; every triangle shows up exactly once.
    let mut rank: Vec<usize> = (0..n).collect();
    rank.sort_by_key(|&v| (g.degree(v), v));
    let mut rank_of = vec![0; n];
    for (r, &v) in rank.iter().enumerate() {
        rank_of[v] = r;
    }
    let mut out = Vec::new();
    for u in 0..n {
        for v in g.neighbors(u).iter() {
            if rank_of[v] <= rank_of[u] {
                continue;
            }
            for w in g.neighbors(u).intersection(g.neighbors(v)).iter() {
                if rank_of[w] > rank_of[v] {
                    let mut t = [u, v, w];
                    t.sort_unstable();
                    out.push(t);
                }
            }
        }
    }
    out.sort_unstable();
    out
}

/// Building detection driven by the triangle list: each triangle offers three
/// apex/chord splits. Decision-equivalent to [`find_building`]; the certificate
/// may differ.
pub fn find_building_fast(g: &Graph) -> Option<BuildingCertificate> {
    for t in list_triangles(g) {
        for apex_idx in 0..3 {
            let v = t[apex_idx];
            let mut rest = [t[(apex_idx + 1) % 3], t[(apex_idx + 2) % 3]];
            rest.sort_unstable();
            if let Some(cert) = building_at(g, v, rest[0], rest[1]) {
                return Some(cert);
            }
        }
    }
    None
}

/// A gem: an induced path on four vertices plus a hub adjacent to all of them.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct GemWitness {
    pub path: [usize; 4],
    pub hub: usize,
}

impl GemWitness {
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "gem";
        let [a, b, c, d] = self.path;
        if !all_distinct([a, b, c, d, self.hub]) {
            return Err(cert_err(kind, "vertices not distinct"));
        }
        let path_ok = g.has_edge(a, b)
            && g.has_edge(b, c)
            && g.has_edge(c, d)
            && !g.has_edge(a, c)
            && !g.has_edge(a, d)
            && !g.has_edge(b, d);
        if !path_ok {
            return Err(cert_err(kind, "path vertices do not induce a path"));
        }
        if !self.path.iter().all(|&v| g.has_edge(self.hub, v)) {
            return Err(cert_err(kind, "hub misses a path vertex"));
        }
        Ok(())
    }
}

/// Find a gem: for each hub, search for an induced four-vertex path inside its
/// neighborhood (middle edge first, then the two pendant ends).
pub fn find_gem(g: &Graph) -> Option<GemWitness> {
    for hub in g.vertices() {
        let within = g.neighbors(hub);
        let members = within.to_vec();
        for (i, &b) in members.iter().enumerate() {
            for &c in &members[i + 1..] {
                if !g.has_edge(b, c) {
                    continue;
                }
                // Ends: a sees b but not c, d sees c but not b, all inside N(hub).
                for (b, c) in [(b, c), (c, b)] {
                    let mut ends_a = g.neighbors(b).intersection(within);
                    ends_a.remove_all(g.neighbors(c));
                    ends_a.remove(c);
                    let mut ends_d = g.neighbors(c).intersection(within);
                    ends_d.remove_all(g.neighbors(b));
                    ends_d.remove(b);
                    for a in ends_a.iter() {
                        for d in ends_d.iter() {
                            if a != d && !g.has_edge(a, d) {
                                let path = if a < d { [a, b, c, d] } else { [d, c, b, a] };
                                return Some(GemWitness { path, hub });
                            }
                        }
                    }
                }
            }
        }
    }
    None
}

/// A bull with a designated nose: `path` is the induced path a2, a1, b1, b2 and
/// the nose is adjacent to exactly the middle pair a1, b1.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NoseBull {
    pub nose: usize,
    pub path: [usize; 4],
}

impl NoseBull {
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "bull";
        let [a2, a1, b1, b2] = self.path;
        let x = self.nose;
        if !all_distinct([a2, a1, b1, b2, x]) {
            return Err(cert_err(kind, "vertices not distinct"));
        }
        let edges = [(a2, a1), (a1, b1), (b1, b2), (x, a1), (x, b1)];
        let non_edges = [(a2, b1), (a2, b2), (a1, b2), (x, a2), (x, b2)];
        if !edges.iter().all(|&(u, v)| g.has_edge(u, v)) {
            return Err(cert_err(kind, "required edge missing"));
        }
        if non_edges.iter().any(|&(u, v)| g.has_edge(u, v)) {
            return Err(cert_err(kind, "forbidden edge present"));
        }
        Ok(())
    }
}

/// Find a bull whose nose is `x`, or none.
pub fn find_bull_with_nose(g: &Graph, x: usize) -> Option<NoseBull> {
    find_bull_with_nose_within(g, x, &VertexSet::full(g.vertex_count()))
}

/// Bull-with-nose search restricted to the subgraph induced by `alive`
/// (which must contain `x`). Used for residual-graph scheme checks.
pub(crate) fn find_bull_with_nose_within(g: &Graph, x: usize, alive: &VertexSet) -> Option<NoseBull> {
    let nbrs: Vec<usize> = g.neighbors(x).intersection(alive).iter().collect();
    for (i, &a1) in nbrs.iter().enumerate() {
        for &b1 in &nbrs[i + 1..] {
            if !g.has_edge(a1, b1) {
                continue;
            }
            // Horn candidates: see one middle vertex, miss the other, miss the nose.
            for (a1, b1) in [(a1, b1), (b1, a1)] {
                let mut horns_a = g.neighbors(a1).intersection(alive);
                horns_a.remove_all(g.neighbors(b1));
                horns_a.remove_all(g.neighbors(x));
                horns_a.remove(b1);
                horns_a.remove(x);
                let mut horns_b = g.neighbors(b1).intersection(alive);
                horns_b.remove_all(g.neighbors(a1));
                horns_b.remove_all(g.neighbors(x));
                horns_b.remove(a1);
                horns_b.remove(x);
                for a2 in horns_a.iter() {
                    for b2 in horns_b.iter() {
                        if a2 != b2 && !g.has_edge(a2, b2) {
                            return Some(NoseBull { nose: x, path: [a2, a1, b1, b2] });
                        }
                    }
                }
            }
        }
    }
    None
}

/// A near building: the apex sees exactly the two rim ends `rim[0]` and
/// `rim[last]`, which are adjacent; the rim is a path whose proper prefix
/// `rim[..last]` is induced, while the final rim vertex may chord back into it.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct NearBuildingWitness {
    pub apex: usize,
    pub rim: Vec<usize>,
}

impl NearBuildingWitness {
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "near-building";
        let j = self.rim.len();
        if j < 4 {
            return Err(cert_err(kind, format!("rim has {j} vertices, need at least 4")));
        }
        if !all_distinct(self.rim.iter().copied().chain([self.apex])) {
            return Err(cert_err(kind, "vertices not distinct"));
        }
        let (w1, wj) = (self.rim[0], self.rim[j - 1]);
        if !(g.has_edge(self.apex, w1) && g.has_edge(self.apex, wj) && g.has_edge(w1, wj)) {
            return Err(cert_err(kind, "apex triangle with the rim ends missing"));
        }
        if self.rim[1..j - 1].iter().any(|&w| g.has_edge(self.apex, w)) {
            return Err(cert_err(kind, "apex sees a rim interior vertex"));
        }
        // rim[..j-1] must be an induced path; edges from rim[j-1] back into the
        // interior are the allowed chords.
        for i in 0..j - 1 {
            for l in i + 1..j - 1 {
                let expected = l == i + 1;
                if g.has_edge(self.rim[i], self.rim[l]) != expected {
                    return Err(cert_err(kind, "rim prefix is not an induced path"));
                }
            }
        }
        if !g.has_edge(self.rim[j - 2], wj) {
            return Err(cert_err(kind, "rim is not a path at its end"));
        }
        Ok(())
    }
}

/// Find a near building, or none.
///
/// For an apex v and an ordered adjacent pair (w1, wj) in N(v), any shortest
/// path from w1 to a neighbor u of wj avoiding N[v] and wj, of length >= 2,
/// yields the rim w1, ..., u, wj; conversely an induced near building survives
/// this pruning, so the search is exact.
pub fn find_near_building(g: &Graph) -> Option<NearBuildingWitness> {
    let n = g.vertex_count();
    for v in g.vertices() {
        let nbrs = g.neighbors(v).to_vec();
        for &w1 in &nbrs {
            for &wj in &nbrs {
                if w1 == wj || !g.has_edge(w1, wj) {
                    continue;
                }
                let mut allowed = VertexSet::full(n);
                allowed.remove_all(g.neighbors(v));
                allowed.remove(v);
                allowed.remove(wj);
                allowed.insert(w1);
                let dist = bfs_distances(g, w1, &allowed);
                let mut best: Option<(usize, usize)> = None;
                for u in g.neighbors(wj).intersection(&allowed).iter() {
                    if u == w1 || dist[u] == usize::MAX || dist[u] < 2 {
                        continue;
                    }
                    if best.is_none_or(|(d, b)| (dist[u], u) < (d, b)) {
                        best = Some((dist[u], u));
                    }
                }
                if let Some((_, u)) = best {
                    let mut rim = crate::ordering::shortest_path_within(g, w1, u, &allowed)
                        .expect("distance table says u is reachable");
                    rim.push(wj);
                    return Some(NearBuildingWitness { apex: v, rim });
                }
            }
        }
    }
    None
}

fn bfs_distances(g: &Graph, from: usize, allowed: &VertexSet) -> Vec<usize> {
    let mut dist = vec![usize::MAX; g.vertex_count()];
    dist[from] = 0;
    let mut queue = std::collections::VecDeque::from([from]);
    while let Some(v) = queue.pop_front() {
        for u in g.neighbors(v).intersection(allowed).iter() {
            if dist[u] == usize::MAX {
                dist[u] = dist[v] + 1;
                queue.push_back(u);
            }
        }
    }
    dist
}

#[cfg(test)]
mod tests {
    use super::*;

    fn house() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap()
    }

    fn sun3() -> Graph {
        Graph::from_edges(
            6,
            &[(3, 4), (4, 5), (5, 3), (0, 3), (0, 4), (1, 4), (1, 5), (2, 5), (2, 3)],
        )
        .unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn domino() -> Graph {
        // Two four-cycles glued on an edge: a=0 b=1 c=2 d=3 e=4 f=5.
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap()
    }

    fn c9_squared() -> Graph {
        let mut edges = Vec::new();
        for i in 0..9usize {
            edges.push((i, (i + 1) % 9));
            edges.push((i, (i + 2) % 9));
        }
        Graph::from_edges(9, &edges).unwrap()
    }

    #[test]
    fn house_certificate_is_canonical() {
        let cert = find_building(&house()).expect("house is a building");
        assert_eq!(cert.apex, 1);
        assert_eq!(cert.hole, vec![1, 0, 4, 3, 2]);
        assert_eq!(cert.chord, (0, 2));
        cert.verify(&house()).unwrap();
    }

    #[test]
    fn seven_vertex_building_found() {
        // C7 plus the chord 1-6; apex 0 sits between the chord ends.
        let mut edges: Vec<(usize, usize)> = (0..7).map(|i| (i, (i + 1) % 7)).collect();
        edges.push((1, 6));
        let g = Graph::from_edges(7, &edges).unwrap();
        let cert = find_building(&g).unwrap();
        assert_eq!(cert.apex, 0);
        assert_eq!(cert.hole, vec![0, 1, 2, 3, 4, 5, 6]);
        assert_eq!(cert.chord, (1, 6));
        cert.verify(&g).unwrap();
    }

    #[test]
    fn building_free_fixtures() {
        assert_eq!(find_building(&cycle(6)), None);
        assert_eq!(find_building(&cycle(5)), None);
        assert_eq!(find_building(&domino()), None);
        assert_eq!(find_building(&sun3()), None);
    }

    #[test]
    fn c9_squared_contains_a_building() {
        let g = c9_squared();
        let cert = find_building(&g).expect("squared nine-cycle has buildings");
        cert.verify(&g).unwrap();
        assert!(find_building_fast(&g).is_some());
    }

    #[test]
    fn fast_variant_agrees_on_fixtures() {
        for g in [house(), sun3(), cycle(5), cycle(6), cycle(7), domino(), c9_squared()] {
            assert_eq!(find_building(&g).is_some(), find_building_fast(&g).is_some());
            if let Some(cert) = find_building_fast(&g) {
                cert.verify(&g).unwrap();
            }
        }
    }

    #[test]
    fn triangle_listing_matches_brute_force() {
        for g in [house(), sun3(), cycle(6), domino(), c9_squared()] {
            let listed = list_triangles(&g);
            let mut brute = Vec::new();
            for u in g.vertices() {
                for v in u + 1..g.vertex_count() {
                    for w in v + 1..g.vertex_count() {
                        if g.has_edge(u, v) && g.has_edge(v, w) && g.has_edge(u, w) {
                            brute.push([u, v, w]);
                        }
                    }
                }
            }
            assert_eq!(listed, brute);
        }
    }

    #[test]
    fn sun_triangle_count() {
        // Center triangle plus one triangle per tip.
        assert_eq!(list_triangles(&sun3()).len(), 4);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(list_triangles(&k4).len(), 4);
        assert!(list_triangles(&cycle(6)).is_empty());
    }

    #[test]
    fn gem_in_sun_and_gem_free_fixtures() {
        let w = find_gem(&sun3()).expect("every sun contains a gem");
        w.verify(&sun3()).unwrap();
        assert_eq!(find_gem(&cycle(5)), None);
        assert_eq!(find_gem(&house()), None);
        assert_eq!(find_gem(&domino()), None);
    }

    #[test]
    fn gem_fixture_exact() {
        // Path 0-1-2-3 plus hub 4 adjacent to everything.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)]).unwrap();
        let w = find_gem(&g).unwrap();
        assert_eq!(w.hub, 4);
        assert_eq!(w.path, [0, 1, 2, 3]);
        w.verify(&g).unwrap();
    }

    #[test]
    fn bull_with_nose_on_exact_bull() {
        // Path 0-1-2-3 with nose 4 on the middle edge.
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap();
        let bull = find_bull_with_nose(&g, 4).unwrap();
        assert_eq!(bull.path, [0, 1, 2, 3]);
        bull.verify(&g).unwrap();
        // A horn is not the nose of any bull here.
        assert_eq!(find_bull_with_nose(&g, 0), None);
    }

    #[test]
    fn every_vertex_of_squared_nine_cycle_is_a_nose() {
        let g = c9_squared();
        for v in g.vertices() {
            let bull = find_bull_with_nose(&g, v).unwrap_or_else(|| panic!("no bull nosed at {v}"));
            bull.verify(&g).unwrap();
        }
    }

    #[test]
    fn house_is_a_near_building() {
        let w = find_near_building(&house()).expect("the house is a near building");
        w.verify(&house()).unwrap();
        assert_eq!(w.rim.len(), 4);
    }

    #[test]
    fn near_building_with_hub_chords() {
        let g = Graph::from_edges(
            6,
            &[(0, 1), (0, 5), (1, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2), (5, 3)],
        )
        .unwrap();
        let w = find_near_building(&g).unwrap();
        w.verify(&g).unwrap();
    }

    #[test]
    fn near_building_free_fixtures() {
        assert_eq!(find_near_building(&cycle(5)), None);
        assert_eq!(find_near_building(&cycle(6)), None);
        assert_eq!(find_near_building(&domino()), None);
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        assert_eq!(find_near_building(&k4), None);
    }

    #[test]
    fn sun_contains_a_near_building() {
        // Tip, its two centers, the far center, and a second tip form one.
        let w = find_near_building(&sun3()).unwrap();
        w.verify(&sun3()).unwrap();
    }
}
