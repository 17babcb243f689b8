//! Brute-force ground truth and seeded graph generators.
//!
//! Everything here is deliberately independent of the polynomial detectors:
//! structures are found by enumerating vertex subsets (or center cliques, for
//! suns) and evaluating exact induced-subgraph predicates, so the two code
//! paths can be compared graph by graph. Generators certify their output with
//! the stated filter and take explicit seeds.

use crate::building::{
    find_building, find_gem, BuildingCertificate, GemWitness, NearBuildingWitness, NoseBull,
};
use crate::graph::{Graph, VertexSet};
use crate::ordering::is_perfect_elimination;
use crate::sun::SunCertificate;
use itertools::Itertools;
use rand::seq::SliceRandom;
use rand::{Rng, SeedableRng};
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Largest vertex count the subset-enumeration oracles accept by default.
pub const ORACLE_DEFAULT_BOUND: usize = 14;

/// The oracle never answers partially: graphs beyond the bound are refused.
#[derive(Debug, Error, PartialEq, Eq)]
#[error("oracle refuses: graph has {n} vertices, enumeration bound is {bound}")]
pub struct OracleRefusal {
    pub n: usize,
    pub bound: usize,
}

/// Structures the oracle can search for.
#[derive(Clone, Debug, PartialEq, Eq)]
pub enum StructureKind {
    /// A k-sun for any k ≥ 3.
    Sun,
    /// A hole plus one chord forming a triangle with an apex.
    Building,
    /// A P4 plus a vertex adjacent to all of it.
    Gem,
    /// A bull whose nose is the given vertex.
    BullWithNose(usize),
    /// An apex on a near-rim (hub chords allowed at the far end).
    NearBuilding,
    /// An induced cycle on at least five vertices.
    Hole,
    /// A building on exactly five vertices.
    House,
    /// A six-cycle plus the long chord: two squares sharing an edge.
    Domino,
    /// An induced P4 whose vertices all lie in the given set.
    P4Within(Vec<usize>),
}

/// A witness found by the oracle, labeled by role.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub enum OracleWitness {
    Sun(SunCertificate),
    Building(BuildingCertificate),
    Gem(GemWitness),
    BullWithNose(NoseBull),
    NearBuilding(NearBuildingWitness),
    /// Cycle order of the hole.
    Hole(Vec<usize>),
    House(BuildingCertificate),
    /// Cycle order of the six-cycle; the chord joins positions 0 and 3.
    Domino(Vec<usize>),
    P4([usize; 4]),
}

/// Search `g` exhaustively for the given structure. Refuses graphs with more
/// than `bound` vertices rather than answering from a partial enumeration.
pub fn oracle_find(
    g: &Graph,
    kind: &StructureKind,
    bound: usize,
) -> Result<Option<OracleWitness>, OracleRefusal> {
    let n = g.vertex_count();
    if n > bound {
        return Err(OracleRefusal { n, bound });
    }
    Ok(match kind {
        StructureKind::Sun => sun_search(g).map(OracleWitness::Sun),
        StructureKind::Building => {
            find_by_subsets(g, 5, n, |h, map| exact_building(h).map(|c| lift_building(&c, map)))
                .map(OracleWitness::Building)
        }
        StructureKind::House => {
            find_by_subsets(g, 5, 5, |h, map| exact_building(h).map(|c| lift_building(&c, map)))
                .map(OracleWitness::House)
        }
        StructureKind::Gem => find_by_subsets(g, 5, 5, |h, map| {
            exact_gem(h).map(|w| GemWitness { path: w.path.map(|v| map[v]), hub: map[w.hub] })
        })
        .map(OracleWitness::Gem),
        StructureKind::BullWithNose(x) => bull_search(g, *x).map(OracleWitness::BullWithNose),
        StructureKind::NearBuilding => find_by_subsets(g, 5, n, |h, map| {
            exact_near_building(h).map(|w| NearBuildingWitness {
                apex: map[w.apex],
                rim: w.rim.iter().map(|&v| map[v]).collect(),
            })
        })
        .map(OracleWitness::NearBuilding),
        StructureKind::Hole => find_by_subsets(g, 5, n, |h, map| {
            cycle_order(h).map(|c| c.into_iter().map(|v| map[v]).collect::<Vec<_>>())
        })
        .map(OracleWitness::Hole),
        StructureKind::Domino => find_by_subsets(g, 6, 6, |h, map| {
            exact_domino(h).map(|c| c.into_iter().map(|v| map[v]).collect::<Vec<_>>())
        })
        .map(OracleWitness::Domino),
        StructureKind::P4Within(set) => p4_within_search(g, set).map(OracleWitness::P4),
    })
}

/// Whether some induced subgraph of `g` is a k-sun (k ≥ 3), by exhaustive
/// center-clique enumeration. Refuses graphs beyond the default bound.
pub fn oracle_has_sun(g: &Graph) -> Result<bool, OracleRefusal> {
    let n = g.vertex_count();
    if n > ORACLE_DEFAULT_BOUND {
        return Err(OracleRefusal { n, bound: ORACLE_DEFAULT_BOUND });
    }
    Ok(sun_search(g).is_some())
}

/// Certificate iff `g` itself — every vertex — is a k-sun.
pub fn is_sun_graph(g: &Graph) -> Option<SunCertificate> {
    let n = g.vertex_count();
    if n < 6 || !n.is_multiple_of(2) {
        return None;
    }
    let k = n / 2;
    let tips: Vec<usize> = g.vertices().filter(|&v| g.degree(v) == 2).collect();
    if tips.len() != k {
        return None;
    }
    let tip_set = VertexSet::from_iter(n, tips.iter().copied());
    let mut center_set = VertexSet::full(n);
    center_set.remove_all(&tip_set);
    if !g.is_clique(&center_set) {
        return None;
    }
    if tips.iter().any(|&d| g.neighbors(d).intersects(&tip_set)) {
        return None;
    }
    // Each center must meet exactly two tip pairs, and the pairs must close
    // into one cycle through all centers.
    let mut incident: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &d in &tips {
        let pair = g.neighbors(d).to_vec();
        incident[pair[0]].push((d, pair[1]));
        incident[pair[1]].push((d, pair[0]));
    }
    if center_set.iter().any(|c| incident[c].len() != 2) {
        return None;
    }
    let start = center_set.min()?;
    let (mut tip_order, mut center_order) = (Vec::new(), vec![start]);
    let (mut last_tip, mut cur) = incident[start][0];
    tip_order.push(last_tip);
    while cur != start {
        if center_order.len() == k {
            return None;
        }
        center_order.push(cur);
        let &(t, next) = incident[cur].iter().find(|&&(t, _)| t != last_tip)?;
        tip_order.push(t);
        last_tip = t;
        cur = next;
    }
    if center_order.len() != k {
        return None;
    }
    let cert = SunCertificate { tips: tip_order, centers: center_order }.canonicalized();
    debug_assert!(cert.verify(g).is_ok());
    Some(cert)
}

/// All labeled connected graphs on `n` vertices (n ≤ 8), by edge mask.
pub fn connected_graphs(n: usize) -> impl Iterator<Item = Graph> {
    assert!((1..=8).contains(&n), "catalog enumeration is desk-scale only");
    let pairs: Vec<(usize, usize)> =
        (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
    let total: u64 = 1 << pairs.len();
    (0..total).filter_map(move |mask| {
        let edges: Vec<(usize, usize)> = pairs
            .iter()
            .enumerate()
            .filter(|&(b, _)| mask >> b & 1 == 1)
            .map(|(_, &e)| e)
            .collect();
        let g = Graph::from_edges(n, &edges).expect("catalog edges are valid");
        g.is_connected().then_some(g)
    })
}

fn find_by_subsets<T>(
    g: &Graph,
    lo: usize,
    hi: usize,
    mut pred: impl FnMut(&Graph, &[usize]) -> Option<T>,
) -> Option<T> {
    let n = g.vertex_count();
    for size in lo..=hi.min(n) {
        for subset in (0..n).combinations(size) {
            let keep = VertexSet::from_iter(n, subset.iter().copied());
            let (h, map) = g.induced_subgraph(&keep);
            if let Some(w) = pred(&h, &map) {
                return Some(w);
            }
        }
    }
    None
}

fn lift_building(c: &BuildingCertificate, map: &[usize]) -> BuildingCertificate {
    BuildingCertificate {
        apex: map[c.apex],
        hole: c.hole.iter().map(|&v| map[v]).collect(),
        chord: (map[c.chord.0], map[c.chord.1]),
    }
}

/// Cycle order when `h` is exactly one cycle (2-regular, one component).
fn cycle_order(h: &Graph) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    if n < 5 || h.vertices().any(|v| h.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut cur = h.neighbors(0).min()?;
    while cur != 0 {
        if order.len() == n {
            return None;
        }
        order.push(cur);
        let nb = h.neighbors(cur).to_vec();
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Witness when `h` is exactly a building: one degree-2 apex over a cycle.
fn exact_building(h: &Graph) -> Option<BuildingCertificate> {
    let n = h.vertex_count();
    if n < 5 {
        return None;
    }
    for v in h.vertices() {
        if h.degree(v) != 2 {
            continue;
        }
        let ends = h.neighbors(v).to_vec();
        let (x, y) = (ends[0], ends[1]);
        if !h.has_edge(x, y) {
            continue;
        }
        let mut rest = VertexSet::full(n);
        rest.remove(v);
        let (ring, map) = h.induced_subgraph(&rest);
        let Some(order) = ring_order_of_length(&ring, n - 1) else { continue };
        let cycle: Vec<usize> = order.into_iter().map(|u| map[u]).collect();
        let pos = cycle.iter().position(|&u| u == x)?;
        let mut rot: Vec<usize> = cycle[pos..].iter().chain(&cycle[..pos]).copied().collect();
        if rot[1] == y {
            rot[1..].reverse();
        }
        debug_assert_eq!((rot[0], *rot.last().unwrap()), (x, y));
        let mut hole = vec![v];
        hole.extend(rot);
        let cert =
            BuildingCertificate { apex: v, hole, chord: (x.min(y), x.max(y)) };
        debug_assert!(cert.verify(h).is_ok());
        return Some(cert);
    }
    None
}

/// Cycle order of any length ≥ 4 (used for the ring under a building apex).
fn ring_order_of_length(h: &Graph, len: usize) -> Option<Vec<usize>> {
    let n = h.vertex_count();
    if n != len || n < 4 || h.vertices().any(|v| h.degree(v) != 2) {
        return None;
    }
    let mut order = vec![0usize];
    let mut prev = 0usize;
    let mut cur = h.neighbors(0).min()?;
    while cur != 0 {
        if order.len() == n {
            return None;
        }
        order.push(cur);
        let nb = h.neighbors(cur).to_vec();
        let next = if nb[0] == prev { nb[1] } else { nb[0] };
        prev = cur;
        cur = next;
    }
    (order.len() == n).then_some(order)
}

/// Witness when `h` is exactly a domino: C6 plus the chord between opposite
/// degree-3 vertices. Returned as the cycle order starting at the lower chord
/// endpoint, so the chord joins positions 0 and 3.
fn exact_domino(h: &Graph) -> Option<Vec<usize>> {
    if h.vertex_count() != 6 || h.edge_count() != 7 {
        return None;
    }
    let deg3: Vec<usize> = h.vertices().filter(|&v| h.degree(v) == 3).collect();
    if deg3.len() != 2
        || !h.has_edge(deg3[0], deg3[1])
        || h.vertices().any(|v| h.degree(v) != 2 && h.degree(v) != 3)
    {
        return None;
    }
    let (a, b) = (deg3[0], deg3[1]);
    let edges: Vec<(usize, usize)> =
        h.edges().filter(|&(u, v)| (u, v) != (a.min(b), a.max(b))).collect();
    let ring = Graph::from_edges(6, &edges).expect("edge subset of a valid graph");
    let order = ring_order_of_length(&ring, 6)?;
    let pos = order.iter().position(|&u| u == a)?;
    let rot: Vec<usize> = order[pos..].iter().chain(&order[..pos]).copied().collect();
    (rot[3] == b).then_some(rot)
}

/// Witness when `h` is exactly a gem: a degree-4 hub over an induced P4.
fn exact_gem(h: &Graph) -> Option<GemWitness> {
    if h.vertex_count() != 5 {
        return None;
    }
    let hub = h.vertices().find(|&v| h.degree(v) == 4)?;
    let mut rest = VertexSet::full(5);
    rest.remove(hub);
    let (sub, map) = h.induced_subgraph(&rest);
    let path = exact_p4(&sub)?.map(|v| map[v]);
    let w = GemWitness { path, hub };
    debug_assert!(w.verify(h).is_ok());
    Some(w)
}

/// Path order when `h` is exactly a P4, endpoints ascending.
fn exact_p4(h: &Graph) -> Option<[usize; 4]> {
    if h.vertex_count() != 4 || h.edge_count() != 3 {
        return None;
    }
    let mut degs: Vec<usize> = h.vertices().map(|v| h.degree(v)).collect();
    degs.sort_unstable();
    if degs != [1, 1, 2, 2] {
        return None;
    }
    let a = h.vertices().find(|&v| h.degree(v) == 1)?;
    let b = h.neighbors(a).min()?;
    let c = {
        let mut s = h.neighbors(b).clone();
        s.remove(a);
        s.min()?
    };
    let d = {
        let mut s = h.neighbors(c).clone();
        s.remove(b);
        s.min()?
    };
    Some(if a < d { [a, b, c, d] } else { [d, c, b, a] })
}

/// Witness when `h` is exactly a near building (one apex, forced rim walk).
fn exact_near_building(h: &Graph) -> Option<NearBuildingWitness> {
    let n = h.vertex_count();
    if n < 5 {
        return None;
    }
    for v in h.vertices() {
        if h.degree(v) != 2 {
            continue;
        }
        let ends = h.neighbors(v).to_vec();
        if !h.has_edge(ends[0], ends[1]) {
            continue;
        }
        for (w1, wj) in [(ends[0], ends[1]), (ends[1], ends[0])] {
            let mut visited = VertexSet::from_iter(n, [v, w1, wj]);
            let mut prefix = vec![w1];
            let mut cur = w1;
            loop {
                let mut next = h.neighbors(cur).clone();
                next.remove_all(&visited);
                match next.len() {
                    0 => break,
                    1 => {
                        let u = next.min().expect("nonempty");
                        prefix.push(u);
                        visited.insert(u);
                        cur = u;
                    }
                    _ => {
                        prefix.clear();
                        break;
                    }
                }
            }
            if prefix.len() >= 3 && visited.len() == n {
                let mut rim = prefix;
                rim.push(wj);
                let w = NearBuildingWitness { apex: v, rim };
                if w.verify(h).is_ok() {
                    return Some(w);
                }
            }
        }
    }
    None
}

/// Bulls with the given nose, by enumerating 4-subsets around it.
fn bull_search(g: &Graph, nose: usize) -> Option<NoseBull> {
    let n = g.vertex_count();
    if nose >= n {
        return None;
    }
    let others: Vec<usize> = (0..n).filter(|&v| v != nose).collect();
    for quad in others.iter().combinations(4) {
        let keep =
            VertexSet::from_iter(n, quad.iter().map(|&&v| v).chain(std::iter::once(nose)));
        let (h, map) = g.induced_subgraph(&keep);
        let nose_local = map.binary_search(&nose).expect("nose kept");
        if let Some(w) = exact_bull(&h, nose_local) {
            return Some(NoseBull { nose, path: w.path.map(|v| map[v]) });
        }
    }
    None
}

/// Witness when `h` is exactly a bull and `nose` is its nose.
fn exact_bull(h: &Graph, nose: usize) -> Option<NoseBull> {
    if h.vertex_count() != 5 || h.degree(nose) != 2 {
        return None;
    }
    let mid = h.neighbors(nose).to_vec();
    if !h.has_edge(mid[0], mid[1]) {
        return None;
    }
    let mut rest = VertexSet::full(5);
    rest.remove(nose);
    let (sub, map) = h.induced_subgraph(&rest);
    let path = exact_p4(&sub)?.map(|v| map[v]);
    if (path[1] != mid[0] || path[2] != mid[1]) && (path[1] != mid[1] || path[2] != mid[0]) {
        return None;
    }
    let w = NoseBull { nose, path };
    debug_assert!(w.verify(h).is_ok());
    Some(w)
}

/// First induced P4 inside `set`, by 4-subset enumeration.
fn p4_within_search(g: &Graph, set: &[usize]) -> Option<[usize; 4]> {
    let n = g.vertex_count();
    let members: Vec<usize> = set.iter().copied().filter(|&v| v < n).unique().collect();
    for quad in members.iter().combinations(4) {
        let keep = VertexSet::from_iter(n, quad.iter().map(|&&v| v));
        let (h, map) = g.induced_subgraph(&keep);
        if let Some(p) = exact_p4(&h) {
            return Some(p.map(|v| map[v]));
        }
    }
    None
}

/// Enumerate k-cliques ascending; stop early when the callback returns true.
fn each_clique(g: &Graph, k: usize, f: &mut dyn FnMut(&[usize]) -> bool) {
    fn rec(
        g: &Graph,
        k: usize,
        cur: &mut Vec<usize>,
        cand: &VertexSet,
        f: &mut dyn FnMut(&[usize]) -> bool,
    ) -> bool {
        if cur.len() == k {
            return f(cur);
        }
        if cur.len() + cand.len() < k {
            return false;
        }
        for v in cand.iter() {
            let mut next = cand.intersection(g.neighbors(v));
            for w in 0..=v {
                next.remove(w);
            }
            cur.push(v);
            let stop = rec(g, k, cur, &next, f);
            cur.pop();
            if stop {
                return true;
            }
        }
        false
    }
    rec(g, k, &mut Vec::new(), &VertexSet::full(g.vertex_count()), f);
}

/// Exhaustive induced k-sun search: enumerate center cliques, classify
/// candidate tips by the center pair they see, then look for a cyclic order
/// of the centers with a pairwise-nonadjacent system of distinct tips.
fn sun_search(g: &Graph) -> Option<SunCertificate> {
    let n = g.vertex_count();
    for k in 3..=n / 2 {
        let mut found = None;
        each_clique(g, k, &mut |clique| {
            if let Some(cert) = sun_on_centers(g, clique) {
                found = Some(cert);
                true
            } else {
                false
            }
        });
        if found.is_some() {
            return found;
        }
    }
    None
}

fn sun_on_centers(g: &Graph, clique: &[usize]) -> Option<SunCertificate> {
    let k = clique.len();
    let n = g.vertex_count();
    let cset = VertexSet::from_iter(n, clique.iter().copied());
    let mut class = vec![vec![Vec::<usize>::new(); k]; k];
    let mut any = false;
    for t in g.vertices() {
        if cset.contains(t) {
            continue;
        }
        let inter = g.neighbors(t).intersection(&cset);
        if inter.len() == 2 {
            let pair = inter.to_vec();
            let i = clique.binary_search(&pair[0]).expect("clique sorted");
            let j = clique.binary_search(&pair[1]).expect("clique sorted");
            class[i][j].push(t);
            any = true;
        }
    }
    if !any {
        return None;
    }
    let rest: Vec<usize> = (1..k).collect();
    for perm in rest.iter().permutations(k - 1) {
        if k > 3 && perm[0] > perm[k - 2] {
            continue; // reflections revisit the same cyclic order
        }
        let order: Vec<usize> = std::iter::once(0).chain(perm.into_iter().copied()).collect();
        if (0..k).any(|pos| {
            let (a, b) = pair_key(order[pos], order[(pos + 1) % k]);
            class[a][b].is_empty()
        }) {
            continue;
        }
        let mut tips = Vec::with_capacity(k);
        if assign_tips(g, &class, &order, 0, &mut tips) {
            let centers: Vec<usize> = order.iter().map(|&i| clique[i]).collect();
            let cert = SunCertificate { tips, centers }.canonicalized();
            debug_assert!(cert.verify(g).is_ok());
            return Some(cert);
        }
    }
    None
}

fn pair_key(i: usize, j: usize) -> (usize, usize) {
    (i.min(j), i.max(j))
}

fn assign_tips(
    g: &Graph,
    class: &[Vec<Vec<usize>>],
    order: &[usize],
    pos: usize,
    tips: &mut Vec<usize>,
) -> bool {
    let k = order.len();
    if pos == k {
        return true;
    }
    let (a, b) = pair_key(order[pos], order[(pos + 1) % k]);
    for &t in &class[a][b] {
        if tips.contains(&t) || tips.iter().any(|&s| g.has_edge(s, t)) {
            continue;
        }
        tips.push(t);
        if assign_tips(g, class, order, pos + 1, tips) {
            return true;
        }
        tips.pop();
    }
    false
}

/// Seeded graph families for property tests and benchmarks.
#[derive(Clone, Debug, PartialEq)]
pub enum GraphFamily {
    /// Erdős–Rényi G(n, p).
    Gnp { n: usize, p: f64 },
    /// G(n, p) rejection-sampled to building-freeness (p decays per attempt).
    BuildingFree { n: usize, p: f64 },
    /// Edge growth: shuffled pairs added while the graph stays building-free.
    BuildingFreeGrown { n: usize, target_edges: usize },
    /// Elimination-game fill over G(n, density) along a random ordering.
    Chordal { n: usize, density: f64 },
    /// Chordal rejection-sampled until the sun oracle finds nothing (n ≤ 14).
    StronglyChordal { n: usize, density: f64 },
    /// G(n, p) rejection-sampled to (building, gem)-freeness.
    BuildingGemFree { n: usize, p: f64 },
    /// The k-sun: tips 0..k, centers k..2k.
    Sun { k: usize },
    /// A k-sun, `extra` further vertices, and noise edges (each touching a
    /// non-sun vertex) added only while the graph stays building-free.
    SunPlusNoise { k: usize, extra: usize, noise_edges: usize },
    /// The cycle C_n.
    Cycle { n: usize },
    /// The cycle power C_n^power: edges between cyclic distance ≤ power.
    CyclePower { n: usize, power: usize },
    /// Pendant / true-twin / false-twin growth: always distance hereditary.
    DistanceHereditary { n: usize },
    /// A tree of cliques: chordal and sun-free by construction.
    BlockGraph { blocks: usize, block_size: usize },
}

/// Errors from [`generate`].
#[derive(Debug, Error)]
pub enum GenerateError {
    #[error("invalid family parameters: {0}")]
    BadParameters(String),
    #[error("rejection sampling budget exhausted after {attempts} attempts")]
    BudgetExhausted { attempts: usize },
    #[error(transparent)]
    Oracle(#[from] OracleRefusal),
}

/// Generate a graph from the family, certified by the family's own filter.
pub fn generate(family: &GraphFamily, seed: u64) -> Result<Graph, GenerateError> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    match *family {
        GraphFamily::Gnp { n, p } => Ok(gnp(n, p, &mut rng)),
        GraphFamily::BuildingFree { n, p } => {
            let budget = 400;
            for attempt in 0..budget {
                let g = gnp(n, p * 0.92f64.powi(attempt as i32), &mut rng);
                if find_building(&g).is_none() {
                    return Ok(g);
                }
            }
            Err(GenerateError::BudgetExhausted { attempts: budget })
        }
        GraphFamily::BuildingFreeGrown { n, target_edges } => {
            let mut pairs: Vec<(usize, usize)> =
                (0..n).flat_map(|i| (i + 1..n).map(move |j| (i, j))).collect();
            pairs.shuffle(&mut rng);
            let mut g = Graph::from_edges(n, &[]).expect("empty graph");
            let mut added = 0;
            for pair in pairs {
                if added == target_edges {
                    break;
                }
                let candidate = g.with_extra_edges(&[pair]);
                if find_building(&candidate).is_none() {
                    g = candidate;
                    added += 1;
                }
            }
            Ok(g)
        }
        GraphFamily::Chordal { n, density } => Ok(random_chordal(n, density, &mut rng)),
        GraphFamily::StronglyChordal { n, density } => {
            if n > ORACLE_DEFAULT_BOUND {
                return Err(GenerateError::BadParameters(format!(
                    "strongly chordal rejection needs the sun oracle; n must be ≤ {ORACLE_DEFAULT_BOUND}"
                )));
            }
            let budget = 400;
            for attempt in 0..budget {
                let g = random_chordal(n, density * 0.92f64.powi(attempt as i32), &mut rng);
                if !oracle_has_sun(&g)? {
                    return Ok(g);
                }
            }
            Err(GenerateError::BudgetExhausted { attempts: budget })
        }
        GraphFamily::BuildingGemFree { n, p } => {
            let budget = 600;
            for attempt in 0..budget {
                let g = gnp(n, p * 0.9f64.powi(attempt as i32), &mut rng);
                if find_building(&g).is_none() && find_gem(&g).is_none() {
                    return Ok(g);
                }
            }
            Err(GenerateError::BudgetExhausted { attempts: budget })
        }
        GraphFamily::Sun { k } => sun_graph(k),
        GraphFamily::SunPlusNoise { k, extra, noise_edges } => {
            let base = sun_graph(k)?;
            let n = 2 * k + extra;
            let mut g = Graph::from_edges(n, &base.edges().collect::<Vec<_>>())
                .expect("sun edges fit the larger graph");
            let mut pairs: Vec<(usize, usize)> = (0..n)
                .flat_map(|i| (i + 1..n).map(move |j| (i, j)))
                .filter(|&(i, j)| i >= 2 * k || j >= 2 * k)
                .collect();
            pairs.shuffle(&mut rng);
            let mut added = 0;
            for pair in pairs {
                if added == noise_edges {
                    break;
                }
                let candidate = g.with_extra_edges(&[pair]);
                if find_building(&candidate).is_none() {
                    g = candidate;
                    added += 1;
                }
            }
            Ok(g)
        }
        GraphFamily::Cycle { n } => {
            if n < 3 {
                return Err(GenerateError::BadParameters("cycles need n ≥ 3".into()));
            }
            let edges: Vec<(usize, usize)> = (0..n).map(|i| (i, (i + 1) % n)).collect();
            Ok(Graph::from_edges(n, &edges).expect("cycle edges are valid"))
        }
        GraphFamily::CyclePower { n, power } => {
            if n < 3 || power == 0 {
                return Err(GenerateError::BadParameters(
                    "cycle powers need n ≥ 3 and power ≥ 1".into(),
                ));
            }
            let mut edges = Vec::new();
            for i in 0..n {
                for d in 1..=power {
                    let j = (i + d) % n;
                    if i != j {
                        edges.push((i.min(j), i.max(j)));
                    }
                }
            }
            edges.sort_unstable();
            edges.dedup();
            Ok(Graph::from_edges(n, &edges).expect("cycle power edges are valid"))
        }
        GraphFamily::DistanceHereditary { n } => {
            if n == 0 {
                return Err(GenerateError::BadParameters("need n ≥ 1".into()));
            }
            let mut adj: Vec<VertexSet> = (0..n).map(|_| VertexSet::new(n)).collect();
            for new in 1..n {
                let u = rng.gen_range(0..new);
                let op = if new == 1 { 0 } else { rng.gen_range(0..3) };
                let mut nbrs = adj[u].clone();
                match op {
                    0 => {
                        // pendant
                        nbrs = VertexSet::from_iter(n, [u]);
                    }
                    1 => {
                        // true twin
                        nbrs.insert(u);
                    }
                    _ => {} // false twin keeps the open neighborhood
                }
                for w in nbrs.iter() {
                    adj[w].insert(new);
                    adj[new].insert(w);
                }
            }
            Ok(Graph::from_adjacency(adj))
        }
        GraphFamily::BlockGraph { blocks, block_size } => {
            if blocks == 0 || block_size < 2 {
                return Err(GenerateError::BadParameters(
                    "need at least one block of size ≥ 2".into(),
                ));
            }
            let n = blocks * (block_size - 1) + 1;
            let mut edges = Vec::new();
            let clique = |members: &[usize], edges: &mut Vec<(usize, usize)>| {
                for (i, &u) in members.iter().enumerate() {
                    for &v in &members[i + 1..] {
                        edges.push((u.min(v), u.max(v)));
                    }
                }
            };
            let mut next_free = block_size;
            clique(&(0..block_size).collect::<Vec<_>>(), &mut edges);
            for _ in 1..blocks {
                let cut = rng.gen_range(0..next_free);
                let mut members = vec![cut];
                members.extend(next_free..next_free + block_size - 1);
                clique(&members, &mut edges);
                next_free += block_size - 1;
            }
            let g = Graph::from_edges(n, &edges).expect("block edges are valid");
            debug_assert!(crate::ordering::is_chordal(&g).holds());
            Ok(g)
        }
    }
}

fn gnp(n: usize, p: f64, rng: &mut ChaCha8Rng) -> Graph {
    let mut edges = Vec::new();
    for i in 0..n {
        for j in i + 1..n {
            if rng.gen_bool(p.clamp(0.0, 1.0)) {
                edges.push((i, j));
            }
        }
    }
    Graph::from_edges(n, &edges).expect("sampled edges are valid")
}

fn random_chordal(n: usize, density: f64, rng: &mut ChaCha8Rng) -> Graph {
    let base = gnp(n, density, rng);
    let mut order: Vec<usize> = (0..n).collect();
    order.shuffle(rng);
    let mut adj: Vec<VertexSet> = base.vertices().map(|v| base.neighbors(v).clone()).collect();
    let mut later = VertexSet::full(n);
    for &v in &order {
        later.remove(v);
        let a = adj[v].intersection(&later).to_vec();
        for (i, &x) in a.iter().enumerate() {
            for &y in &a[i + 1..] {
                adj[x].insert(y);
                adj[y].insert(x);
            }
        }
    }
    let g = Graph::from_adjacency(adj);
    debug_assert!({
        let ord = crate::ordering::VertexOrder::candidate(order).expect("shuffled permutation");
        is_perfect_elimination(&g, &ord).holds
    });
    g
}

fn sun_graph(k: usize) -> Result<Graph, GenerateError> {
    if k < 3 {
        return Err(GenerateError::BadParameters("suns need k ≥ 3".into()));
    }
    let mut edges = Vec::new();
    for i in 0..k {
        for j in i + 1..k {
            edges.push((k + i, k + j));
        }
    }
    for i in 0..k {
        edges.push((i, k + i));
        edges.push((i, k + (i + 1) % k));
    }
    Ok(Graph::from_edges(2 * k, &edges).expect("sun edges are valid"))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{is_chordal, is_strongly_chordal};

    fn cycle(n: usize) -> Graph {
        generate(&GraphFamily::Cycle { n }, 0).unwrap()
    }

    fn sun(k: usize) -> Graph {
        generate(&GraphFamily::Sun { k }, 0).unwrap()
    }

    fn house() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap()
    }

    fn domino() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap()
    }

    #[test]
    fn catalog_counts_match_known_values() {
        let counts: Vec<usize> = (1..=5).map(|n| connected_graphs(n).count()).collect();
        assert_eq!(counts, vec![1, 1, 4, 38, 728]);
    }

    #[test]
    fn oracle_refuses_beyond_the_bound() {
        let path = Graph::from_edges(15, &(0..14).map(|i| (i, i + 1)).collect::<Vec<_>>())
            .unwrap();
        assert_eq!(
            oracle_find(&path, &StructureKind::Hole, 14),
            Err(OracleRefusal { n: 15, bound: 14 })
        );
        assert_eq!(oracle_has_sun(&path), Err(OracleRefusal { n: 15, bound: 14 }));
    }

    #[test]
    fn house_witnesses() {
        let w = oracle_find(&house(), &StructureKind::House, 14).unwrap().unwrap();
        match w {
            OracleWitness::House(cert) => cert.verify(&house()).unwrap(),
            other => panic!("unexpected witness {other:?}"),
        }
        assert!(oracle_find(&house(), &StructureKind::Building, 14).unwrap().is_some());
        assert_eq!(oracle_find(&cycle(6), &StructureKind::House, 14).unwrap(), None);
    }

    #[test]
    fn sun_oracle_on_fixtures() {
        assert!(oracle_has_sun(&sun(3)).unwrap());
        assert!(oracle_has_sun(&sun(4)).unwrap());
        assert!(!oracle_has_sun(&cycle(6)).unwrap());
        assert!(!oracle_has_sun(&cycle(7)).unwrap());
        assert!(!oracle_has_sun(&domino()).unwrap());
        match oracle_find(&sun(3), &StructureKind::Sun, 14).unwrap() {
            Some(OracleWitness::Sun(cert)) => {
                assert_eq!(cert, SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] });
            }
            other => panic!("unexpected {other:?}"),
        }
    }

    #[test]
    fn sun_oracle_sees_centers_reused_as_tips() {
        // The 4-sun without one center diagonal hides a 3-sun in which the
        // bypassed center serves as a tip.
        let edges: Vec<(usize, usize)> = sun(4).edges().filter(|&e| e != (4, 6)).collect();
        let g = Graph::from_edges(8, &edges).unwrap();
        let cert = match oracle_find(&g, &StructureKind::Sun, 14).unwrap() {
            Some(OracleWitness::Sun(c)) => c,
            other => panic!("unexpected {other:?}"),
        };
        cert.verify(&g).unwrap();
        assert_eq!(cert.k(), 3);
    }

    #[test]
    fn whole_graph_sun_reader() {
        assert_eq!(is_sun_graph(&sun(3)).unwrap().k(), 3);
        assert_eq!(is_sun_graph(&sun(5)).unwrap().k(), 5);
        let padded = Graph::from_edges(7, &sun(3).edges().collect::<Vec<_>>()).unwrap();
        assert_eq!(is_sun_graph(&padded), None);
        assert_eq!(is_sun_graph(&cycle(6)), None);
    }

    #[test]
    fn hole_domino_gem_witnesses() {
        match oracle_find(&cycle(5), &StructureKind::Hole, 14).unwrap() {
            Some(OracleWitness::Hole(c)) => assert_eq!(c.len(), 5),
            other => panic!("unexpected {other:?}"),
        }
        let k4_pendant =
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
                .unwrap();
        assert_eq!(oracle_find(&k4_pendant, &StructureKind::Hole, 14).unwrap(), None);

        match oracle_find(&domino(), &StructureKind::Domino, 14).unwrap() {
            Some(OracleWitness::Domino(c)) => {
                assert_eq!(c.len(), 6);
                let g = domino();
                assert!(g.has_edge(c[0], c[3]));
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(oracle_find(&cycle(6), &StructureKind::Domino, 14).unwrap(), None);

        let gem =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 1), (4, 2), (4, 3)])
                .unwrap();
        match oracle_find(&gem, &StructureKind::Gem, 14).unwrap() {
            Some(OracleWitness::Gem(w)) => {
                assert_eq!(w, GemWitness { path: [0, 1, 2, 3], hub: 4 });
            }
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(oracle_find(&house(), &StructureKind::Gem, 14).unwrap(), None);
        assert!(oracle_find(&sun(3), &StructureKind::Gem, 14).unwrap().is_some());
    }

    #[test]
    fn near_building_oracle_matches_detector_on_fixtures() {
        use crate::building::find_near_building;
        let hub_chords = Graph::from_edges(
            6,
            &[(0, 1), (0, 5), (1, 5), (1, 2), (2, 3), (3, 4), (4, 5), (5, 2), (5, 3)],
        )
        .unwrap();
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)])
            .unwrap();
        for g in [house(), hub_chords, sun(3), cycle(5), cycle(6), domino(), k4] {
            let via_oracle =
                oracle_find(&g, &StructureKind::NearBuilding, 14).unwrap().is_some();
            assert_eq!(via_oracle, find_near_building(&g).is_some());
        }
    }

    #[test]
    fn bull_with_nose_kind() {
        let bull =
            Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 1), (4, 2)]).unwrap();
        match oracle_find(&bull, &StructureKind::BullWithNose(4), 14).unwrap() {
            Some(OracleWitness::BullWithNose(w)) => assert_eq!(w.path, [0, 1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
        assert_eq!(oracle_find(&bull, &StructureKind::BullWithNose(0), 14).unwrap(), None);
    }

    #[test]
    fn p4_within_kind() {
        let g = cycle(5);
        match oracle_find(&g, &StructureKind::P4Within(vec![0, 1, 2, 3]), 14).unwrap() {
            Some(OracleWitness::P4(p)) => assert_eq!(p, [0, 1, 2, 3]),
            other => panic!("unexpected {other:?}"),
        }
        let k3 = Graph::from_edges(3, &[(0, 1), (1, 2), (0, 2)]).unwrap();
        assert_eq!(
            oracle_find(&k3, &StructureKind::P4Within(vec![0, 1, 2]), 14).unwrap(),
            None
        );
    }

    #[test]
    fn generated_families_are_certified() {
        for seed in 0..5u64 {
            let bf = generate(&GraphFamily::BuildingFree { n: 10, p: 0.3 }, seed).unwrap();
            assert_eq!(find_building(&bf), None);

            let grown =
                generate(&GraphFamily::BuildingFreeGrown { n: 10, target_edges: 20 }, seed)
                    .unwrap();
            assert_eq!(find_building(&grown), None);

            let ch = generate(&GraphFamily::Chordal { n: 12, density: 0.4 }, seed).unwrap();
            assert!(is_chordal(&ch).holds());

            let sc =
                generate(&GraphFamily::StronglyChordal { n: 10, density: 0.3 }, seed).unwrap();
            assert!(is_strongly_chordal(&sc).holds());
            assert!(!oracle_has_sun(&sc).unwrap());

            let bgf = generate(&GraphFamily::BuildingGemFree { n: 10, p: 0.3 }, seed).unwrap();
            assert_eq!(find_building(&bgf), None);
            assert_eq!(find_gem(&bgf), None);

            let noisy =
                generate(&GraphFamily::SunPlusNoise { k: 3, extra: 6, noise_edges: 8 }, seed)
                    .unwrap();
            assert_eq!(find_building(&noisy), None);
            SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] }
                .verify(&noisy)
                .unwrap();

            let dh = generate(&GraphFamily::DistanceHereditary { n: 10 }, seed).unwrap();
            assert!(dh.is_connected());
            for kind in [
                StructureKind::Hole,
                StructureKind::House,
                StructureKind::Domino,
                StructureKind::Gem,
            ] {
                assert_eq!(oracle_find(&dh, &kind, 14).unwrap(), None, "kind {kind:?}");
            }

            let bg =
                generate(&GraphFamily::BlockGraph { blocks: 3, block_size: 4 }, seed).unwrap();
            assert!(is_strongly_chordal(&bg).holds());
            assert!(!oracle_has_sun(&bg).unwrap());
        }
    }

    #[test]
    fn cycle_power_matches_hand_construction() {
        let g = generate(&GraphFamily::CyclePower { n: 9, power: 2 }, 0).unwrap();
        assert_eq!(g.edge_count(), 18);
        for i in 0..9usize {
            assert!(g.has_edge(i, (i + 1) % 9));
            assert!(g.has_edge(i, (i + 2) % 9));
            assert!(!g.has_edge(i, (i + 3) % 9));
        }
    }

    #[test]
    fn degenerate_parameters_are_rejected() {
        assert!(matches!(
            generate(&GraphFamily::Sun { k: 2 }, 0),
            Err(GenerateError::BadParameters(_))
        ));
        assert!(matches!(
            generate(&GraphFamily::Cycle { n: 2 }, 0),
            Err(GenerateError::BadParameters(_))
        ));
        assert!(matches!(
            generate(&GraphFamily::StronglyChordal { n: 20, density: 0.2 }, 0),
            Err(GenerateError::BadParameters(_))
        ));
    }

    #[test]
    fn sun_kind_and_has_sun_are_consistent() {
        for g in [sun(3), sun(4), cycle(6), cycle(7), domino(), house()] {
            let via_find = oracle_find(&g, &StructureKind::Sun, 14).unwrap().is_some();
            assert_eq!(via_find, oracle_has_sun(&g).unwrap());
        }
    }
}
