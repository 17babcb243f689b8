//! Sun detection in building-free graphs via sunflower tips and elimination schemes.
//!
//! The pipeline asks, for every vertex x and every adjacent pair y, z in N(x),
//! whether x is the tip of a sunflower once all other neighbors of x are
//! removed. That test sorts the non-neighbors of x by how much of N(x) they
//! see, completes the graph they induce so the sorted order becomes a strong
//! elimination ordering, and then looks for a 3-sun through x in the completed
//! graph by checking whether one fixed elimination scheme stays perfect.

use crate::building::{all_distinct, cert_err, find_building, BuildingCertificate, CertificateError};
use crate::graph::{Graph, VertexSet};
use crate::ordering::{is_perfect_elimination, is_simplicial, is_strong_elimination, VertexOrder};
use rayon::prelude::*;
use serde::{Deserialize, Serialize};
use thiserror::Error;

/// Errors from the sun pipeline.
#[derive(Debug, Error, PartialEq, Eq)]
pub enum SunError {
    /// The input contains a building; the search contract requires building-free graphs.
    #[error("input contains a building (apex {})", .0.apex)]
    Building(BuildingCertificate),
    /// A query vertex that must be simplicial is not.
    #[error("vertex {x} is not simplicial")]
    NotSimplicial { x: usize },
    /// Extraction was asked for on a graph whose decision is "no sun".
    #[error("graph contains no sun")]
    NoSun,
    /// A caller-supplied certificate failed validation.
    #[error(transparent)]
    InvalidCertificate(#[from] CertificateError),
    /// An internal guarantee failed; this indicates a pipeline bug, not a user error.
    #[error("pipeline contract violated: {0}")]
    Contract(String),
}

/// Knobs for the sun search.
#[derive(Clone, Copy, Debug)]
pub struct SunOptions {
    /// Reject inputs that contain a building (on by default; the algorithm's
    /// correctness contract is conditional on building-freeness).
    pub precheck: bool,
    /// Re-check the intermediate guarantees (elimination schemes, red-edge
    /// domination, first-neighbor witnesses) on every branch; failures become
    /// [`SunError::Contract`].
    pub verify: bool,
    /// Worker threads for the independent (x, yz) branches; 1 = sequential.
    pub threads: usize,
}

impl Default for SunOptions {
    fn default() -> Self {
        SunOptions { precheck: true, verify: false, threads: 1 }
    }
}

/// A k-sun: `tips[i]` is adjacent exactly to `centers[i]` and
/// `centers[(i+1) % k]` within the certificate, tips are pairwise
/// non-adjacent, and the centers form a clique.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunCertificate {
    pub tips: Vec<usize>,
    pub centers: Vec<usize>,
}

impl SunCertificate {
    pub fn k(&self) -> usize {
        self.tips.len()
    }

    fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.tips.iter().chain(&self.centers).copied())
    }

    /// Re-check the certificate against `g` without trusting the finder.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "sun";
        let k = self.tips.len();
        if k < 3 || self.centers.len() != k {
            return Err(cert_err(kind, "need k >= 3 tips and as many centers"));
        }
        let all: Vec<usize> = self.tips.iter().chain(&self.centers).copied().collect();
        if all.iter().any(|&v| v >= g.vertex_count()) {
            return Err(cert_err(kind, "vertex id out of range"));
        }
        if !all_distinct(all.iter().copied()) {
            return Err(cert_err(kind, "vertices not distinct"));
        }
        let centers = VertexSet::from_iter(g.vertex_count(), self.centers.iter().copied());
        if !g.is_clique(&centers) {
            return Err(cert_err(kind, "centers do not form a clique"));
        }
        for (i, &d) in self.tips.iter().enumerate() {
            for &e in &self.tips[i + 1..] {
                if g.has_edge(d, e) {
                    return Err(cert_err(kind, "tips are not a stable set"));
                }
            }
            let inside = g.neighbors(d).intersection(&self.vertex_set(g.vertex_count()));
            let expected = VertexSet::from_iter(
                g.vertex_count(),
                [self.centers[i], self.centers[(i + 1) % k]],
            );
            if inside != expected {
                return Err(cert_err(
                    kind,
                    format!("tip {d} is not adjacent to exactly its two consecutive centers"),
                ));
            }
        }
        let (sub, _) = g.induced_subgraph(&self.vertex_set(g.vertex_count()));
        if !crate::ordering::is_chordal(&sub).holds() {
            return Err(cert_err(kind, "induced subgraph is not chordal"));
        }
        Ok(())
    }

    /// Rotate and reflect to the unique labeling with the smallest tip first
    /// and the lexicographically smaller traversal direction.
    pub fn canonicalized(self) -> Self {
        let k = self.tips.len();
        let t0 = (0..k).min_by_key(|&i| self.tips[i]).expect("k >= 3");
        let fwd_tips: Vec<usize> = (0..k).map(|j| self.tips[(t0 + j) % k]).collect();
        let fwd_centers: Vec<usize> = (0..k).map(|j| self.centers[(t0 + j) % k]).collect();
        // Reversing the cyclic traversal sends tip d_{t0-j} to slot j; its two
        // centers swap roles, so slot j's center is the original c_{t0-j+1}.
        let bwd_tips: Vec<usize> = (0..k).map(|j| self.tips[(t0 + k - j) % k]).collect();
        let bwd_centers: Vec<usize> = (0..k).map(|j| self.centers[(t0 + k + 1 - j) % k]).collect();
        if (&fwd_tips, &fwd_centers) <= (&bwd_tips, &bwd_centers) {
            SunCertificate { tips: fwd_tips, centers: fwd_centers }
        } else {
            SunCertificate { tips: bwd_tips, centers: bwd_centers }
        }
    }
}

/// A sunflower: centers joined cyclically by petal paths, `petals[i]` running
/// from `centers[i]` to `centers[(i+1) % k]` inclusive. Petal interiors see
/// nothing of the sunflower beyond their two path neighbors; edges between
/// centers are unconstrained.
#[derive(Clone, Debug, PartialEq, Eq, Serialize, Deserialize)]
pub struct SunflowerCertificate {
    pub centers: Vec<usize>,
    pub petals: Vec<Vec<usize>>,
}

impl SunflowerCertificate {
    fn vertex_set(&self, n: usize) -> VertexSet {
        VertexSet::from_iter(n, self.petals.iter().flatten().copied())
    }

    /// Re-check the certificate against `g`.
    pub fn verify(&self, g: &Graph) -> Result<(), CertificateError> {
        let kind = "sunflower";
        let k = self.centers.len();
        if k < 3 || self.petals.len() != k {
            return Err(cert_err(kind, "need k >= 3 centers and as many petals"));
        }
        if self.petals.iter().flatten().any(|&v| v >= g.vertex_count()) {
            return Err(cert_err(kind, "vertex id out of range"));
        }
        let interiors: Vec<usize> =
            self.petals.iter().flat_map(|p| p[1..p.len().saturating_sub(1)].iter().copied()).collect();
        if !all_distinct(self.centers.iter().copied().chain(interiors.iter().copied())) {
            return Err(cert_err(kind, "centers and petal interiors are not distinct"));
        }
        let members = self.vertex_set(g.vertex_count());
        for (i, petal) in self.petals.iter().enumerate() {
            if petal.len() < 3 {
                return Err(cert_err(kind, format!("petal {i} is shorter than two edges")));
            }
            if petal[0] != self.centers[i] || *petal.last().unwrap() != self.centers[(i + 1) % k] {
                return Err(cert_err(kind, format!("petal {i} does not join its two centers")));
            }
            for w in petal.windows(2) {
                if !g.has_edge(w[0], w[1]) {
                    return Err(cert_err(kind, format!("petal {i} is not a path")));
                }
            }
            for (p, &u) in petal.iter().enumerate().skip(1).take(petal.len() - 2) {
                let inside = g.neighbors(u).intersection(&members);
                let expected =
                    VertexSet::from_iter(g.vertex_count(), [petal[p - 1], petal[p + 1]]);
                if inside != expected {
                    return Err(cert_err(
                        kind,
                        format!("petal vertex {u} has sunflower neighbors beyond its path"),
                    ));
                }
            }
        }
        Ok(())
    }

    /// Cyclic shift placing petal `tip_petal` last.
    fn rotated_tip_last(&self, tip_petal: usize) -> Self {
        let k = self.centers.len();
        let shift = (tip_petal + 1) % k;
        SunflowerCertificate {
            centers: (0..k).map(|j| self.centers[(j + shift) % k]).collect(),
            petals: (0..k).map(|j| self.petals[(j + shift) % k].clone()).collect(),
        }
    }

    /// The same sunflower traversed in the opposite direction; the last petal
    /// stays last, so a tip petal keeps its slot.
    fn reversed(&self) -> Self {
        let k = self.centers.len();
        let centers: Vec<usize> = (0..k).map(|j| self.centers[k - 1 - j]).collect();
        let petals: Vec<Vec<usize>> = (0..k)
            .map(|j| {
                let src = if j == k - 1 { k - 1 } else { k - 2 - j };
                let mut p = self.petals[src].clone();
                p.reverse();
                p
            })
            .collect();
        SunflowerCertificate { centers, petals }
    }
}

/// Intermediate state of one tip-of-sunflower branch, exposed for inspection.
#[derive(Clone, Debug, PartialEq, Eq)]
pub struct TipSearchState {
    /// The simplicial query vertex.
    pub x: usize,
    /// The non-neighbors of x, sorted ascending by `n(y, x)` (ties by id).
    pub order: Vec<usize>,
    /// `(y, |N(y) ∩ N(x)|)` aligned with `order`.
    pub nvals: Vec<(usize, usize)>,
    /// The input graph plus the completion edges (all inside the non-neighbors).
    pub h: Graph,
    /// Red edges marked by the 3-sun test, as (earlier, later) in `order`.
    pub red_edges: Vec<(usize, usize)>,
}

/// Whether `u` X-dominates `v`: N(v) ∩ X ⊆ N[u] ∩ X.
pub fn n_dominates(g: &Graph, x_set: &VertexSet, u: usize, v: usize) -> bool {
    let nv = g.neighbors(v).intersection(x_set);
    let mut nu = g.neighbors(u).intersection(x_set);
    if x_set.contains(u) {
        nu.insert(u);
    }
    nv.is_subset_of(&nu)
}

/// Add edges so that `ord` becomes a strong elimination ordering of the result.
///
/// Iteration i makes ord[i]'s later neighborhood A a clique and then, for each
/// position pair j < s inside A, grafts every later vertex seen by the j-th
/// member but missed by the s-th onto the s-th. All membership tests read the
/// graph as it stood before the iteration; the batch is applied at its end.
pub fn scc_completion(gs: &Graph, ord: &VertexOrder) -> Graph {
    let n = gs.vertex_count();
    assert_eq!(ord.len(), n, "ordering must cover the whole graph");
    let seq = ord.as_slice();
    let pos = ord.positions();
    let mut adj: Vec<VertexSet> = gs.vertices().map(|v| gs.neighbors(v).clone()).collect();
    let mut later = VertexSet::full(n);
    for &yi in seq {
        later.remove(yi);
        let mut a: Vec<usize> = adj[yi].intersection(&later).to_vec();
        a.sort_by_key(|&v| pos[v]);
        let mut pending: Vec<(usize, usize)> = Vec::new();
        for (j, &yij) in a.iter().enumerate() {
            for &yis in &a[j + 1..] {
                if !adj[yij].contains(yis) {
                    pending.push((yij, yis));
                }
                let mut inherit = adj[yij].intersection(&later);
                inherit.remove_all(&adj[yis]);
                inherit.remove(yis);
                for r in inherit.iter() {
                    pending.push((r, yis));
                }
            }
        }
        for (u, v) in pending {
            if !adj[u].contains(v) {
                adj[u].insert(v);
                adj[v].insert(u);
            }
        }
    }
    let out = Graph::from_adjacency(adj);
    debug_assert!(is_strong_elimination(&out, ord).holds);
    out
}

/// Decide whether `x` lies in a 3-sun of `h`, given the sorted ordering of its
/// non-neighbors; returns the marked red edges alongside the decision.
///
/// `h` must be chordal with `x` simplicial, `ord` a strong elimination
/// ordering of the subgraph on the non-neighbors that ascends in
/// `|N(y) ∩ N(x)|`, and every h-edge inside `ord` respecting N(x)-inclusion by
/// position. With `verify` those preconditions are checked, and the decision
/// is cross-checked against the red-edge domination criterion and the
/// first-later-neighbor witness; any mismatch is a contract error.
pub fn in_3_sun(
    h: &Graph,
    x: usize,
    ord: &[usize],
    verify: bool,
) -> Result<(bool, Vec<(usize, usize)>), SunError> {
    let n = h.vertex_count();
    if !is_simplicial(h, x) {
        return Err(SunError::NotSimplicial { x });
    }
    let mx = h.non_neighbors(x);
    let k = ord.len();
    if k != mx.len() || ord.iter().any(|&y| !mx.contains(y)) {
        return Err(SunError::Contract(
            "ordering does not cover exactly the non-neighbors of x".into(),
        ));
    }
    let x_nbrs = h.neighbors(x);
    if verify {
        check_in_3_sun_preconditions(h, ord, x_nbrs, &mx)?;
    }

    // Red edges: [y_i, y_p] whenever some later y_q sees both while y_i and
    // y_p are non-adjacent (the P3 y_i y_q y_p with i < p < q).
    let mut suffix = vec![VertexSet::new(n); k];
    for p in (0..k.saturating_sub(1)).rev() {
        suffix[p] = suffix[p + 1].clone();
        suffix[p].insert(ord[p + 1]);
    }
    let mut red: Vec<(usize, usize)> = Vec::new();
    for i in 0..k.saturating_sub(2) {
        for p in i + 1..k {
            if h.has_edge(ord[i], ord[p]) {
                continue;
            }
            let common = h.neighbors(ord[i]).intersection(h.neighbors(ord[p]));
            if common.intersects(&suffix[p]) {
                red.push((ord[i], ord[p]));
            }
        }
    }

    let hp = h.with_extra_edges(&red);
    let mut scheme: Vec<usize> = ord.to_vec();
    scheme.extend(x_nbrs.iter());
    scheme.push(x);
    let order = VertexOrder::candidate(scheme)
        .map_err(|e| SunError::Contract(format!("elimination scheme is malformed: {e}")))?;
    let found = !is_perfect_elimination(&hp, &order).holds;

    if verify {
        // Route 2: some red edge (y_i, y_j) where y_j fails to N(x)-dominate y_i.
        let via_domination = red.iter().any(|&(yi, yj)| !n_dominates(h, x_nbrs, yj, yi));
        // Route 3: some y_i whose first later neighbor y_j in the augmented
        // graph misses a vertex of N(x) that y_i sees.
        let via_first_neighbor = (0..k).any(|i| {
            let yj = match (i + 1..k).find(|&j| hp.has_edge(ord[i], ord[j])) {
                Some(j) => ord[j],
                None => return false,
            };
            !n_dominates(h, x_nbrs, yj, ord[i])
        });
        if found != via_domination || found != via_first_neighbor {
            return Err(SunError::Contract(format!(
                "3-sun routes disagree: scheme={found} domination={via_domination} \
                 first-neighbor={via_first_neighbor}"
            )));
        }
    }
    Ok((found, red))
}

fn check_in_3_sun_preconditions(
    h: &Graph,
    ord: &[usize],
    x_nbrs: &VertexSet,
    mx: &VertexSet,
) -> Result<(), SunError> {
    let (hm, map) = h.induced_subgraph(mx);
    let mut local_pos = vec![0usize; h.vertex_count()];
    for (new, &old) in map.iter().enumerate() {
        local_pos[old] = new;
    }
    let local = VertexOrder::candidate(ord.iter().map(|&y| local_pos[y]).collect())
        .map_err(|e| SunError::Contract(format!("non-neighbor ordering malformed: {e}")))?;
    if !is_strong_elimination(&hm, &local).holds {
        return Err(SunError::Contract(
            "ordering is not a strong elimination ordering of the non-neighbor subgraph".into(),
        ));
    }
    for w in ord.windows(2) {
        if h.neighbors(w[0]).intersection_len(x_nbrs) > h.neighbors(w[1]).intersection_len(x_nbrs)
        {
            return Err(SunError::Contract(
                "ordering does not ascend in shared-neighbor counts".into(),
            ));
        }
    }
    for (i, &yi) in ord.iter().enumerate() {
        for &yj in &ord[i + 1..] {
            if h.has_edge(yi, yj) {
                let ni = h.neighbors(yi).intersection(x_nbrs);
                let nj = h.neighbors(yj).intersection(x_nbrs);
                if !ni.is_subset_of(&nj) {
                    return Err(SunError::Contract(
                        "adjacent ordered pair violates N(x)-inclusion".into(),
                    ));
                }
            }
        }
    }
    Ok(())
}

/// Decide whether `x` is the tip of a sunflower in `g`.
pub fn tip_of_sunflower(g: &Graph, x: usize) -> Result<(bool, TipSearchState), SunError> {
    tip_of_sunflower_with(g, x, &SunOptions::default())
}

/// [`tip_of_sunflower`] with explicit options.
pub fn tip_of_sunflower_with(
    g: &Graph,
    x: usize,
    opts: &SunOptions,
) -> Result<(bool, TipSearchState), SunError> {
    if opts.precheck {
        if let Some(b) = find_building(g) {
            return Err(SunError::Building(b));
        }
    }
    if !is_simplicial(g, x) {
        return Err(SunError::NotSimplicial { x });
    }
    let mx = g.non_neighbors(x);
    let x_nbrs = g.neighbors(x);
    let mut order: Vec<usize> = mx.iter().collect();
    let nval = |y: usize| g.neighbors(y).intersection_len(x_nbrs);
    order.sort_by_key(|&y| (nval(y), y));
    let nvals: Vec<(usize, usize)> = order.iter().map(|&y| (y, nval(y))).collect();

    // Complete the non-neighbor subgraph, then overlay the new edges onto g.
    let (gm, map) = g.induced_subgraph(&mx);
    let mut local_pos = vec![0usize; g.vertex_count()];
    for (new, &old) in map.iter().enumerate() {
        local_pos[old] = new;
    }
    let local_ord = VertexOrder::candidate(order.iter().map(|&y| local_pos[y]).collect())
        .expect("sorted non-neighbors are a permutation of the induced subgraph");
    let completed = scc_completion(&gm, &local_ord);
    let mut added: Vec<(usize, usize)> = Vec::new();
    for u in completed.vertices() {
        let mut new_edges = completed.neighbors(u).clone();
        new_edges.remove_all(gm.neighbors(u));
        for v in new_edges.iter() {
            if u < v {
                added.push((map[u], map[v]));
            }
        }
    }
    let h = g.with_extra_edges(&added);

    if opts.verify {
        // The completed graph must be chordal with non-neighbors-then-N(x)-then-x
        // as a perfect elimination scheme.
        let mut scheme: Vec<usize> = order.clone();
        scheme.extend(x_nbrs.iter());
        scheme.push(x);
        let scheme = VertexOrder::candidate(scheme)
            .map_err(|e| SunError::Contract(format!("elimination scheme malformed: {e}")))?;
        if !is_perfect_elimination(&h, &scheme).holds {
            return Err(SunError::Contract(
                "completed graph rejects the sunflower elimination scheme".into(),
            ));
        }
    }

    let (found, red_edges) = in_3_sun(&h, x, &order, opts.verify)?;
    Ok((found, TipSearchState { x, order, nvals, h, red_edges }))
}

/// Decide whether a building-free graph contains a sun.
pub fn find_sun_decision(g: &Graph, opts: &SunOptions) -> Result<bool, SunError> {
    if opts.precheck {
        if let Some(b) = find_building(g) {
            return Err(SunError::Building(b));
        }
    }
    let branch_opts = SunOptions { precheck: false, ..*opts };
    let mut branches: Vec<(usize, usize, usize)> = Vec::new();
    for x in g.vertices() {
        let nbrs = g.neighbors(x).to_vec();
        for (i, &y) in nbrs.iter().enumerate() {
            for &z in &nbrs[i + 1..] {
                if g.has_edge(y, z) {
                    branches.push((x, y, z));
                }
            }
        }
    }
    let eval = |&(x, y, z): &(usize, usize, usize)| -> Result<bool, SunError> {
        let mut keep = VertexSet::full(g.vertex_count());
        keep.remove_all(g.neighbors(x));
        keep.insert(y);
        keep.insert(z);
        keep.insert(x);
        let (branch, map) = g.induced_subgraph(&keep);
        let x_local = map.binary_search(&x).expect("x survives the branch restriction");
        Ok(tip_of_sunflower_with(&branch, x_local, &branch_opts)?.0)
    };
    if opts.threads > 1 {
        let pool = rayon::ThreadPoolBuilder::new()
            .num_threads(opts.threads)
            .build()
            .map_err(|e| SunError::Contract(format!("thread pool: {e}")))?;
        let hit = pool.install(|| {
            branches.par_iter().find_map_any(|b| match eval(b) {
                Ok(true) => Some(Ok(true)),
                Ok(false) => None,
                Err(e) => Some(Err(e)),
            })
        });
        hit.unwrap_or(Ok(false))
    } else {
        for b in &branches {
            if eval(b)? {
                return Ok(true);
            }
        }
        Ok(false)
    }
}

/// Find a sun in a building-free graph: the decision plus, when positive, a
/// fully validated certificate obtained by deletion self-reduction.
pub fn find_sun(g: &Graph) -> Result<Option<SunCertificate>, SunError> {
    find_sun_with(g, &SunOptions::default())
}

/// [`find_sun`] with explicit options.
pub fn find_sun_with(g: &Graph, opts: &SunOptions) -> Result<Option<SunCertificate>, SunError> {
    if opts.precheck {
        if let Some(b) = find_building(g) {
            return Err(SunError::Building(b));
        }
    }
    let inner = SunOptions { precheck: false, ..*opts };
    if !find_sun_decision(g, &inner)? {
        return Ok(None);
    }
    extract_sun_with(g, &inner).map(Some)
}

/// Extract a sun certificate from a building-free graph known to contain one.
pub fn extract_sun(g: &Graph) -> Result<SunCertificate, SunError> {
    extract_sun_with(g, &SunOptions::default())
}

/// [`extract_sun`] with explicit options.
///
/// One descending-id deletion pass suffices: "contains a sun" is hereditary,
/// so a vertex whose removal kills every sun stays undeletable as the graph
/// shrinks. At the fixpoint every surviving vertex lies in every surviving
/// sun, which forces the survivors to be exactly one sun.
pub fn extract_sun_with(g: &Graph, opts: &SunOptions) -> Result<SunCertificate, SunError> {
    if opts.precheck {
        if let Some(b) = find_building(g) {
            return Err(SunError::Building(b));
        }
    }
    let inner = SunOptions { precheck: false, ..*opts };
    if !find_sun_decision(g, &inner)? {
        return Err(SunError::NoSun);
    }
    let mut kept = VertexSet::full(g.vertex_count());
    for v in g.vertices().rev() {
        let mut candidate = kept.clone();
        candidate.remove(v);
        let (sub, _) = g.induced_subgraph(&candidate);
        if find_sun_decision(&sub, &inner)? {
            kept = candidate;
        }
    }
    let (core, map) = g.induced_subgraph(&kept);
    let local = read_sun_certificate(&core)
        .ok_or_else(|| SunError::Contract("deletion fixpoint is not a sun".into()))?;
    let cert = SunCertificate {
        tips: local.tips.iter().map(|&v| map[v]).collect(),
        centers: local.centers.iter().map(|&v| map[v]).collect(),
    }
    .canonicalized();
    cert.verify(g).map_err(|e| SunError::Contract(format!("extracted certificate invalid: {e}")))?;
    Ok(cert)
}

/// Read the sun structure off a graph that is exactly a sun, or return none.
///
/// Deliberately structural (degrees, clique test, tip-pair cycle walk) so the
/// certificate is derived from the graph itself rather than from search state.
fn read_sun_certificate(g: &Graph) -> Option<SunCertificate> {
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
    // Walk the tip-pair cycle: each tip joins two centers; the pairs must form
    // a single Hamiltonian cycle through all centers.
    let mut tip_at: Vec<Vec<(usize, usize)>> = vec![Vec::new(); n];
    for &d in &tips {
        let cs = g.neighbors(d).to_vec();
        debug_assert_eq!(cs.len(), 2);
        tip_at[cs[0]].push((d, cs[1]));
        tip_at[cs[1]].push((d, cs[0]));
    }
    if center_set.iter().any(|c| tip_at[c].len() != 2) {
        return None;
    }
    let start = center_set.min()?;
    let mut centers = vec![start];
    let mut ordered_tips = Vec::new();
    let (mut cur_tip, mut cur) = tip_at[start][0];
    ordered_tips.push(cur_tip);
    while cur != start {
        centers.push(cur);
        let &(next_tip, next) = tip_at[cur].iter().find(|&&(t, _)| t != cur_tip)?;
        ordered_tips.push(next_tip);
        cur_tip = next_tip;
        cur = next;
        if centers.len() > k {
            return None;
        }
    }
    if centers.len() != k {
        return None;
    }
    Some(SunCertificate { tips: ordered_tips, centers }.canonicalized())
}

/// One rewrite step of the sunflower reduction, scanning interior centers that
/// miss the last center. Returns the strictly smaller sunflower, none when no
/// rule applies, or a contract error when the configuration forces a building.
fn sunflower_step(
    g: &Graph,
    s: &SunflowerCertificate,
) -> Result<Option<SunflowerCertificate>, SunError> {
    let k = s.centers.len();
    let c = &s.centers;
    let p = &s.petals;
    let last = c[k - 1];
    for ii in 1..k - 1 {
        let ci = c[ii];
        if g.has_edge(ci, last) {
            continue;
        }
        // Merge rule: a center missing every other center stops being a
        // center; its two petals concatenate into one.
        if c.iter().all(|&cj| cj == ci || !g.has_edge(ci, cj)) {
            let mut merged = p[ii - 1].clone();
            merged.extend_from_slice(&p[ii][1..]);
            let mut petals = p[..ii - 1].to_vec();
            petals.push(merged);
            petals.extend_from_slice(&p[ii + 1..]);
            let mut centers = c[..ii].to_vec();
            centers.extend_from_slice(&c[ii + 1..]);
            return Ok(Some(SunflowerCertificate { centers, petals }));
        }
        let seen_later = (ii + 1..k - 1).rev().find(|&jj| g.has_edge(ci, c[jj]));
        match seen_later {
            None => {
                // Everything this center sees comes before it; shortcut
                // through the earliest such center.
                let tt = (0..ii)
                    .find(|&jj| g.has_edge(ci, c[jj]))
                    .expect("a non-isolated center sees something");
                if tt == 0 {
                    if ii == k - 2 {
                        return Err(SunError::Contract(
                            "penultimate center adjacent only to the first center forces a \
                             building"
                                .into(),
                        ));
                    }
                    let mut bridge = vec![c[0]];
                    bridge.extend_from_slice(&p[ii]);
                    let mut petals = vec![bridge];
                    petals.extend_from_slice(&p[ii + 1..]);
                    let mut centers = vec![c[0]];
                    centers.extend_from_slice(&c[ii + 1..]);
                    return Ok(Some(SunflowerCertificate { centers, petals }));
                }
                let mut bridge = vec![c[tt]];
                bridge.extend_from_slice(&p[ii]);
                let mut petals = p[..tt].to_vec();
                petals.push(bridge);
                petals.extend_from_slice(&p[ii + 1..]);
                let mut centers = c[..=tt].to_vec();
                centers.extend_from_slice(&c[ii + 1..]);
                return Ok(Some(SunflowerCertificate { centers, petals }));
            }
            Some(tt) => {
                // The center sees a later center; bridge forward to the
                // latest one, through the earliest earlier neighbor if any.
                let seen_earlier = (0..ii).find(|&jj| g.has_edge(ci, c[jj]));
                match seen_earlier {
                    None => {
                        let mut bridge = p[ii - 1].clone();
                        bridge.push(c[tt]);
                        let mut petals = p[..ii - 1].to_vec();
                        petals.push(bridge);
                        petals.extend_from_slice(&p[tt..]);
                        let mut centers = c[..ii].to_vec();
                        centers.extend_from_slice(&c[tt..]);
                        return Ok(Some(SunflowerCertificate { centers, petals }));
                    }
                    Some(rr) => {
                        let bridge = vec![c[rr], ci, c[tt]];
                        let mut petals = p[..rr].to_vec();
                        petals.push(bridge);
                        petals.extend_from_slice(&p[tt..]);
                        let mut centers = c[..=rr].to_vec();
                        centers.extend_from_slice(&c[tt..]);
                        return Ok(Some(SunflowerCertificate { centers, petals }));
                    }
                }
            }
        }
    }
    Ok(None)
}

/// Convert a sunflower with a simplicial two-edge tip petal into a sun.
///
/// Repeatedly shrinks the sunflower: centers missing the boundary centers are
/// merged away or bridged past (strictly fewer vertices or centers each time),
/// in both traversal directions. A stable sunflower must have consecutive
/// centers adjacent and all petals of length two; if its centers are not yet a
/// clique, re-rooting the tip at a non-adjacent pair restarts the shrinking.
/// In a building-free graph this terminates in a sun; configurations that
/// cannot occur without a building surface as contract errors.
pub fn sunflower_to_sun(
    g: &Graph,
    s: &SunflowerCertificate,
    tip_petal: usize,
) -> Result<SunCertificate, SunError> {
    s.verify(g)?;
    let k = s.centers.len();
    if tip_petal >= k {
        return Err(cert_err("sunflower", "tip petal index out of range").into());
    }
    if s.petals[tip_petal].len() != 3 {
        return Err(cert_err("sunflower", "tip petal must have exactly two edges").into());
    }
    let tip = s.petals[tip_petal][1];
    if !g.has_edge(s.petals[tip_petal][0], s.petals[tip_petal][2]) {
        return Err(SunError::NotSimplicial { x: tip });
    }
    if let Some(b) = find_building(g) {
        return Err(SunError::Building(b));
    }

    let mut cur = s.rotated_tip_last(tip_petal);
    for _ in 0..4 * g.vertex_count() + 16 {
        debug_assert!(cur.verify(g).is_ok(), "rewrite produced an invalid sunflower");
        let k = cur.centers.len();
        if k == 3 {
            if cur.petals.iter().any(|p| p.len() != 3) {
                return Err(SunError::Contract(
                    "three-petal sunflower with a long petal cannot be building-free".into(),
                ));
            }
            let cert = SunCertificate {
                tips: cur.petals.iter().map(|p| p[1]).collect(),
                centers: cur.centers.clone(),
            };
            cert.verify(g).map_err(|e| {
                SunError::Contract(format!("three-petal sunflower is not a 3-sun: {e}"))
            })?;
            return Ok(cert.canonicalized());
        }
        if let Some(next) = sunflower_step(g, &cur)? {
            cur = next;
            continue;
        }
        if let Some(next) = sunflower_step(g, &cur.reversed())? {
            cur = next;
            continue;
        }
        // Stable in both directions: every interior center sees both boundary
        // centers, so consecutive centers must be adjacent with two-edge petals.
        for i in 0..k - 1 {
            if !g.has_edge(cur.centers[i], cur.centers[i + 1]) {
                return Err(SunError::Contract(
                    "stable sunflower with non-adjacent consecutive centers forces a building"
                        .into(),
                ));
            }
        }
        if cur.petals.iter().any(|p| p.len() != 3) {
            return Err(SunError::Contract(
                "stable sunflower with a long petal forces a building".into(),
            ));
        }
        let missing = (0..k)
            .flat_map(|a| (a + 1..k).map(move |b| (a, b)))
            .find(|&(a, b)| !g.has_edge(cur.centers[a], cur.centers[b]));
        match missing {
            None => {
                let cert = SunCertificate {
                    tips: cur.petals.iter().map(|p| p[1]).collect(),
                    centers: cur.centers.clone(),
                };
                cert.verify(g).map_err(|e| {
                    SunError::Contract(format!("clique-centered sunflower is not a sun: {e}"))
                })?;
                return Ok(cert.canonicalized());
            }
            Some((a, _)) => {
                // Re-root the tip at petal a; its petal vertex is simplicial
                // (consecutive centers are adjacent), and the non-adjacent
                // partner is now an interior center missing the last one, so
                // the next pass must shrink.
                cur = cur.rotated_tip_last(a);
            }
        }
    }
    Err(SunError::Contract("sunflower reduction failed to terminate".into()))
}

#[cfg(test)]
mod tests {
    use super::*;

    fn sun(k: usize) -> Graph {
        // Tips 0..k, centers k..2k; tip i joins centers k+i and k+(i+1) mod k.
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
        Graph::from_edges(2 * k, &edges).unwrap()
    }

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn house() -> Graph {
        Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 0), (0, 2)]).unwrap()
    }

    fn domino() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap()
    }

    #[test]
    fn domination_basics() {
        let g = sun(3);
        let full = VertexSet::full(6);
        assert!(n_dominates(&g, &full, 2, 2));
        assert!(n_dominates(&g, &VertexSet::new(6), 0, 5));
        // Within the center pair {3, 4}: center 5 sees both, tip 0 also sees
        // both, so each dominates the other.
        let x = VertexSet::from_iter(6, [3, 4]);
        assert!(n_dominates(&g, &x, 5, 0));
        // Tip 1 sees only 4 there; tip 2 sees only 3; neither dominates 0.
        assert!(!n_dominates(&g, &x, 1, 0));
    }

    #[test]
    fn completion_leaves_cliques_and_paths_unchanged() {
        let k4 = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let ord = VertexOrder::candidate(vec![2, 0, 3, 1]).unwrap();
        assert_eq!(scc_completion(&k4, &ord).edge_count(), 6);

        let p3 = Graph::from_edges(3, &[(0, 1), (1, 2)]).unwrap();
        let ord = VertexOrder::candidate(vec![0, 1, 2]).unwrap();
        let done = scc_completion(&p3, &ord);
        assert_eq!(done.edge_count(), 2);
        assert!(is_strong_elimination(&done, &ord).holds);
    }

    #[test]
    fn completion_of_four_cycle_adds_one_chord() {
        let c4 = Graph::from_edges(4, &[(0, 1), (1, 2), (2, 3), (3, 0)]).unwrap();
        let ord = VertexOrder::candidate(vec![0, 1, 2, 3]).unwrap();
        let done = scc_completion(&c4, &ord);
        assert_eq!(done.edge_count(), 5);
        assert!(done.has_edge(1, 3));
        assert!(!done.has_edge(0, 2));
        assert!(is_strong_elimination(&done, &ord).holds);
    }

    #[test]
    fn three_sun_tip_detected_with_all_routes_agreeing() {
        let g = sun(3);
        // x = tip 0; non-neighbors are tips 1, 2 and the far center 5.
        let (found, red) = in_3_sun(&g, 0, &[1, 2, 5], true).unwrap();
        assert!(found);
        assert_eq!(red, vec![(1, 2)]);
    }

    #[test]
    fn cliques_and_stars_have_no_tip() {
        let k5 = Graph::from_edges(
            5,
            &[(0, 1), (0, 2), (0, 3), (0, 4), (1, 2), (1, 3), (1, 4), (2, 3), (2, 4), (3, 4)],
        )
        .unwrap();
        let (found, red) = in_3_sun(&k5, 0, &[], true).unwrap();
        assert!(!found && red.is_empty());

        let star = Graph::from_edges(4, &[(0, 1), (0, 2), (0, 3)]).unwrap();
        let (found, red) = in_3_sun(&star, 1, &[2, 3], true).unwrap();
        assert!(!found && red.is_empty());
    }

    #[test]
    fn tip_search_traces() {
        let opts = SunOptions { verify: true, ..SunOptions::default() };
        let (found, state) = tip_of_sunflower_with(&sun(3), 0, &opts).unwrap();
        assert!(found);
        assert_eq!(state.order, vec![1, 2, 5]);
        assert_eq!(state.nvals, vec![(1, 1), (2, 1), (5, 2)]);
        assert_eq!(state.red_edges, vec![(1, 2)]);
        // The completion adds nothing here.
        assert_eq!(state.h.edge_count(), sun(3).edge_count());

        let k4_minus = Graph::from_edges(4, &[(0, 2), (0, 3), (1, 2), (1, 3), (2, 3)]).unwrap();
        let (found, _) = tip_of_sunflower_with(&k4_minus, 0, &opts).unwrap();
        assert!(!found);

        assert_eq!(tip_of_sunflower(&cycle(7), 0), Err(SunError::NotSimplicial { x: 0 }));
    }

    #[test]
    fn find_sun_on_suns() {
        let cert = find_sun(&sun(3)).unwrap().expect("3-sun contains a sun");
        assert_eq!(cert, SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] });
        let cert4 = find_sun(&sun(4)).unwrap().expect("4-sun contains a sun");
        assert_eq!(cert4.k(), 4);
        cert4.verify(&sun(4)).unwrap();
    }

    #[test]
    fn find_sun_negative_fixtures() {
        assert_eq!(find_sun(&cycle(5)).unwrap(), None);
        assert_eq!(find_sun(&cycle(7)).unwrap(), None);
        assert_eq!(find_sun(&domino()).unwrap(), None);
        let path = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (3, 4)]).unwrap();
        assert_eq!(find_sun(&path).unwrap(), None);
        let k4_pendant =
            Graph::from_edges(5, &[(0, 1), (0, 2), (0, 3), (1, 2), (1, 3), (2, 3), (3, 4)])
                .unwrap();
        assert_eq!(find_sun(&k4_pendant).unwrap(), None);
    }

    #[test]
    fn buildings_are_rejected_up_front() {
        match find_sun(&house()) {
            Err(SunError::Building(cert)) => cert.verify(&house()).unwrap(),
            other => panic!("expected a building rejection, got {other:?}"),
        }
    }

    #[test]
    fn parallel_branches_agree() {
        let opts = SunOptions { threads: 2, ..SunOptions::default() };
        assert!(find_sun_decision(&sun(3), &opts).unwrap());
        assert!(!find_sun_decision(&cycle(5), &opts).unwrap());
    }

    #[test]
    fn extraction_peels_noise() {
        // Isolated extra vertex.
        let mut edges: Vec<(usize, usize)> = sun(3).edges().collect();
        let g = Graph::from_edges(7, &edges).unwrap();
        let cert = extract_sun(&g).unwrap();
        assert_eq!(cert, SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] });

        // Extra vertex adjacent to all three centers.
        edges.extend([(6, 3), (6, 4), (6, 5)]);
        let g = Graph::from_edges(7, &edges).unwrap();
        let cert = extract_sun(&g).unwrap();
        cert.verify(&g).unwrap();
        assert_eq!(cert.k(), 3);
        assert!(!cert.tips.contains(&6) && !cert.centers.contains(&6));

        // A bare sun is its own fixpoint.
        assert_eq!(extract_sun(&sun(4)).unwrap().k(), 4);

        assert_eq!(extract_sun(&cycle(6)), Err(SunError::NoSun));
    }

    fn sun_as_sunflower(k: usize) -> SunflowerCertificate {
        SunflowerCertificate {
            centers: (k..2 * k).collect(),
            petals: (0..k).map(|i| vec![k + i, i, k + (i + 1) % k]).collect(),
        }
    }

    #[test]
    fn sunflower_shortcut_on_suns() {
        let g = sun(3);
        for tip_petal in 0..3 {
            let cert = sunflower_to_sun(&g, &sun_as_sunflower(3), tip_petal).unwrap();
            assert_eq!(cert, SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] });
        }
        let g4 = sun(4);
        let cert = sunflower_to_sun(&g4, &sun_as_sunflower(4), 1).unwrap();
        assert_eq!(cert.k(), 4);
        cert.verify(&g4).unwrap();
    }

    #[test]
    fn sunflower_reduction_uses_reverse_scan() {
        // A 4-sun missing one center diagonal: still building-free, and the
        // reduction must find the 3-sun that uses a center as a tip.
        let mut edges: Vec<(usize, usize)> = sun(4).edges().filter(|&e| e != (4, 6)).collect();
        edges.sort_unstable();
        let g = Graph::from_edges(8, &edges).unwrap();
        assert_eq!(find_building(&g), None);
        let cert = sunflower_to_sun(&g, &sun_as_sunflower(4), 3).unwrap();
        cert.verify(&g).unwrap();
        assert_eq!(cert.k(), 3);
    }

    #[test]
    fn sunflower_reduction_reroots_the_tip() {
        // A 5-sun missing the diagonal between centers two apart (6 and 8):
        // stable in both scans, so the tip must be re-rooted before shrinking.
        let mut edges: Vec<(usize, usize)> = sun(5).edges().filter(|&e| e != (6, 8)).collect();
        edges.sort_unstable();
        let g = Graph::from_edges(10, &edges).unwrap();
        assert_eq!(find_building(&g), None);
        let cert = sunflower_to_sun(&g, &sun_as_sunflower(5), 0).unwrap();
        cert.verify(&g).unwrap();
        assert!(find_sun(&g).unwrap().is_some());
    }

    #[test]
    fn sunflower_merge_rule_mechanics() {
        // Center 1 sees no other center; its two petals concatenate.
        let edges = [
            (0, 10), (10, 1), (1, 11), (11, 2), (2, 12), (12, 3), (3, 20), (20, 0), (0, 3),
        ];
        let g = Graph::from_edges(21, &edges).unwrap();
        let s = SunflowerCertificate {
            centers: vec![0, 1, 2, 3],
            petals: vec![vec![0, 10, 1], vec![1, 11, 2], vec![2, 12, 3], vec![3, 20, 0]],
        };
        s.verify(&g).unwrap();
        let next = sunflower_step(&g, &s).unwrap().expect("merge rule fires");
        assert_eq!(next.centers, vec![0, 2, 3]);
        assert_eq!(next.petals[0], vec![0, 10, 1, 11, 2]);
        next.verify(&g).unwrap();
    }

    #[test]
    fn sunflower_bridge_rule_mechanics() {
        // Center 1 sees only center 0: bridge from center 0 through petal 1.
        let edges = [
            (0, 10), (10, 1), (1, 11), (11, 2), (2, 12), (12, 3), (3, 20), (20, 0), (0, 3),
            (0, 1),
        ];
        let g = Graph::from_edges(21, &edges).unwrap();
        let s = SunflowerCertificate {
            centers: vec![0, 1, 2, 3],
            petals: vec![vec![0, 10, 1], vec![1, 11, 2], vec![2, 12, 3], vec![3, 20, 0]],
        };
        s.verify(&g).unwrap();
        let next = sunflower_step(&g, &s).unwrap().expect("bridge rule fires");
        assert_eq!(next.centers, vec![0, 2, 3]);
        assert_eq!(next.petals[0], vec![0, 1, 11, 2]);
        next.verify(&g).unwrap();
    }

    #[test]
    fn sunflower_forward_bridge_rule_mechanics() {
        // Five centers; center 1 misses the last but sees center 3 ahead and
        // nothing behind: its predecessor petal extends forward to center 3.
        let edges = [
            (0, 10), (10, 1), (1, 11), (11, 2), (2, 12), (12, 3), (3, 13), (13, 4), (4, 20),
            (20, 0), (0, 4), (1, 3),
        ];
        let g = Graph::from_edges(21, &edges).unwrap();
        let s = SunflowerCertificate {
            centers: vec![0, 1, 2, 3, 4],
            petals: vec![
                vec![0, 10, 1],
                vec![1, 11, 2],
                vec![2, 12, 3],
                vec![3, 13, 4],
                vec![4, 20, 0],
            ],
        };
        s.verify(&g).unwrap();
        let next = sunflower_step(&g, &s).unwrap().expect("forward bridge fires");
        assert_eq!(next.centers, vec![0, 3, 4]);
        assert_eq!(next.petals, vec![vec![0, 10, 1, 3], vec![3, 13, 4], vec![4, 20, 0]]);
        next.verify(&g).unwrap();
    }

    #[test]
    fn sunflower_two_sided_bridge_rule_mechanics() {
        // As above plus the edge 0-1: the center bridges as a bare path 0-1-3.
        let edges = [
            (0, 10), (10, 1), (1, 11), (11, 2), (2, 12), (12, 3), (3, 13), (13, 4), (4, 20),
            (20, 0), (0, 4), (1, 3), (0, 1),
        ];
        let g = Graph::from_edges(21, &edges).unwrap();
        let s = SunflowerCertificate {
            centers: vec![0, 1, 2, 3, 4],
            petals: vec![
                vec![0, 10, 1],
                vec![1, 11, 2],
                vec![2, 12, 3],
                vec![3, 13, 4],
                vec![4, 20, 0],
            ],
        };
        s.verify(&g).unwrap();
        let next = sunflower_step(&g, &s).unwrap().expect("two-sided bridge fires");
        assert_eq!(next.centers, vec![0, 3, 4]);
        assert_eq!(next.petals, vec![vec![0, 1, 3], vec![3, 13, 4], vec![4, 20, 0]]);
        next.verify(&g).unwrap();
    }

    #[test]
    fn sunflower_precondition_errors() {
        let g = sun(3);
        let mut s = sun_as_sunflower(3);
        assert!(matches!(
            sunflower_to_sun(&g, &s, 9),
            Err(SunError::InvalidCertificate(_))
        ));
        // Corrupt a petal so validation fails.
        s.petals[0][1] = 1;
        assert!(matches!(sunflower_to_sun(&g, &s, 0), Err(SunError::InvalidCertificate(_))));

        // A tip petal whose centers are not adjacent is not simplicial.
        let c6 = cycle(6);
        let flower = SunflowerCertificate {
            centers: vec![0, 2, 4],
            petals: vec![vec![0, 1, 2], vec![2, 3, 4], vec![4, 5, 0]],
        };
        flower.verify(&c6).unwrap();
        assert_eq!(sunflower_to_sun(&c6, &flower, 2), Err(SunError::NotSimplicial { x: 5 }));
    }

    #[test]
    fn canonical_form_is_rotation_and_reflection_invariant() {
        let a = SunCertificate { tips: vec![1, 2, 0], centers: vec![4, 5, 3] };
        let b = SunCertificate { tips: vec![0, 2, 1], centers: vec![4, 3, 5] };
        assert_eq!(a.clone().canonicalized(), b.canonicalized());
        assert_eq!(
            a.canonicalized(),
            SunCertificate { tips: vec![0, 1, 2], centers: vec![3, 4, 5] }
        );
    }
}
