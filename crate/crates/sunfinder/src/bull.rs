//! Bull-nose-free elimination schemes for (building, gem)-free graphs.
//!
//! A vertex is eliminated safely when it is not the nose of any bull among
//! the vertices still alive. For (building, gem)-free graphs every LBFS
//! ordering has this property at each step; the distance-2 P4 test used for
//! distance-hereditary graphs is strictly stronger, and the two checks are
//! kept side by side so the gap between them stays visible.

use crate::building::{find_bull_with_nose_within, NoseBull};
use crate::graph::{Graph, VertexSet};
use crate::ordering::VertexOrder;

/// Outcome of sweeping an elimination ordering with a per-suffix check.
#[derive(Clone, Debug)]
pub struct SchemeReport<V> {
    /// The ordering that was swept.
    pub ordering: VertexOrder,
    /// `(vertex, witness)` for every position whose suffix check failed.
    pub violations: Vec<(usize, V)>,
}

impl<V> SchemeReport<V> {
    pub fn is_clean(&self) -> bool {
        self.violations.is_empty()
    }
}

/// Sweep `order`, reporting every vertex that is the nose of a bull among the
/// vertices from its position onward.
pub fn check_lbfs_nose_free(g: &Graph, order: &VertexOrder) -> SchemeReport<NoseBull> {
    let mut alive = VertexSet::full(g.vertex_count());
    let mut violations = Vec::new();
    for &v in order.as_slice() {
        if let Some(bull) = find_bull_with_nose_within(g, v, &alive) {
            debug_assert!(bull.verify(g).is_ok());
            violations.push((v, bull));
        }
        alive.remove(v);
    }
    SchemeReport { ordering: order.clone(), violations }
}

/// Greedily build an ordering in which each vertex, at its turn, is not the
/// nose of any bull among the remaining vertices (lowest eligible id first).
/// Returns none as soon as some residual graph has every vertex a bull nose.
pub fn bull_free_elimination_order(g: &Graph) -> Option<VertexOrder> {
    let n = g.vertex_count();
    let mut alive = VertexSet::full(n);
    let mut seq = Vec::with_capacity(n);
    for _ in 0..n {
        let v = alive.iter().find(|&v| find_bull_with_nose_within(g, v, &alive).is_none())?;
        seq.push(v);
        alive.remove(v);
    }
    Some(VertexOrder::candidate(seq).expect("greedy removal emits each vertex once"))
}

/// Sweep `order`, reporting every vertex whose distance-≤2 ball within its
/// suffix graph contains an induced P4. This is the distance-hereditary
/// criterion; it implies nose-freeness but not conversely.
pub fn d2_p4_check(g: &Graph, order: &VertexOrder) -> SchemeReport<[usize; 4]> {
    let mut alive = VertexSet::full(g.vertex_count());
    let mut violations = Vec::new();
    for &v in order.as_slice() {
        let ball = d2_ball(g, v, &alive);
        if let Some(p4) = induced_p4_within(g, &ball) {
            violations.push((v, p4));
        }
        alive.remove(v);
    }
    SchemeReport { ordering: order.clone(), violations }
}

/// Vertices within distance two of `v` in the graph induced on `alive`
/// (including `v` itself).
pub(crate) fn d2_ball(g: &Graph, v: usize, alive: &VertexSet) -> VertexSet {
    let first = g.neighbors(v).intersection(alive);
    let mut ball = first.clone();
    for u in first.iter() {
        ball.union_with(&g.neighbors(u).intersection(alive));
    }
    ball.insert(v);
    ball
}

/// First induced P4 with all four vertices inside `set`, scanning middle
/// edges in ascending order; endpoints are canonicalized ascending.
pub(crate) fn induced_p4_within(g: &Graph, set: &VertexSet) -> Option<[usize; 4]> {
    for b in set.iter() {
        for c in g.neighbors(b).intersection(set).iter() {
            let mut ends_a = g.neighbors(b).intersection(set);
            ends_a.remove_all(g.neighbors(c));
            ends_a.remove(c);
            if ends_a.is_empty() {
                continue;
            }
            let mut ends_d = g.neighbors(c).intersection(set);
            ends_d.remove_all(g.neighbors(b));
            ends_d.remove(b);
            for a in ends_a.iter() {
                for d in ends_d.iter() {
                    if a != d && !g.has_edge(a, d) {
                        return Some(if a < d { [a, b, c, d] } else { [d, c, b, a] });
                    }
                }
            }
        }
    }
    None
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::ordering::{lbfs, lbfs_with_seed};

    fn cycle(n: usize) -> Graph {
        Graph::from_edges(n, &(0..n).map(|i| (i, (i + 1) % n)).collect::<Vec<_>>()).unwrap()
    }

    fn squared_nine_cycle() -> Graph {
        let mut edges = Vec::new();
        for i in 0..9 {
            edges.push((i, (i + 1) % 9));
            edges.push((i, (i + 2) % 9));
        }
        Graph::from_edges(9, &edges).unwrap()
    }

    fn domino() -> Graph {
        Graph::from_edges(6, &[(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (5, 0), (1, 4)]).unwrap()
    }

    fn complete(n: usize) -> Graph {
        let mut edges = Vec::new();
        for i in 0..n {
            for j in i + 1..n {
                edges.push((i, j));
            }
        }
        Graph::from_edges(n, &edges).unwrap()
    }

    #[test]
    fn contrast_graph_separates_the_two_checks() {
        // P4 0-1-2-3 plus vertex 4 adjacent to 0 and 2. With 4 first, its
        // distance-2 ball is the whole graph and contains the P4, yet 4 is
        // not a bull nose (its two neighbors are non-adjacent).
        let g = Graph::from_edges(5, &[(0, 1), (1, 2), (2, 3), (4, 0), (4, 2)]).unwrap();
        let sigma = VertexOrder::candidate(vec![4, 0, 1, 2, 3]).unwrap();
        let noses = check_lbfs_nose_free(&g, &sigma);
        assert!(noses.is_clean());
        let p4s = d2_p4_check(&g, &sigma);
        assert_eq!(p4s.violations.len(), 1);
        assert_eq!(p4s.violations[0], (4, [0, 1, 2, 3]));
    }

    #[test]
    fn squared_nine_cycle_starts_with_a_nose() {
        let g = squared_nine_cycle();
        for seed in 0..5u64 {
            let sigma = lbfs_with_seed(&g, seed);
            let report = check_lbfs_nose_free(&g, &sigma);
            assert!(!report.is_clean());
            assert_eq!(report.violations[0].0, sigma.as_slice()[0]);
        }
        assert_eq!(bull_free_elimination_order(&g), None);
    }

    #[test]
    fn building_and_gem_free_fixtures_are_nose_free() {
        let tree = Graph::from_edges(7, &[(0, 1), (0, 2), (1, 3), (1, 4), (2, 5), (2, 6)])
            .unwrap();
        for g in [tree, cycle(5), cycle(6), domino()] {
            for seed in 0..5u64 {
                let sigma = lbfs_with_seed(&g, seed);
                assert!(check_lbfs_nose_free(&g, &sigma).is_clean());
            }
            assert!(bull_free_elimination_order(&g).is_some());
        }
    }

    #[test]
    fn five_cycle_fails_the_distance_two_test() {
        let g = cycle(5);
        let report = d2_p4_check(&g, &lbfs(&g));
        assert!(!report.is_clean());
    }

    #[test]
    fn cographs_pass_the_distance_two_test() {
        for g in [complete(4), cycle(4)] {
            let report = d2_p4_check(&g, &lbfs(&g));
            assert!(report.is_clean());
        }
    }

    #[test]
    fn cliques_use_the_identity_greedy_order() {
        let order = bull_free_elimination_order(&complete(5)).unwrap();
        assert_eq!(order.as_slice(), &[0, 1, 2, 3, 4]);
    }

    #[test]
    fn greedy_order_reverifies_as_nose_free() {
        for g in [domino(), cycle(6), complete(4)] {
            let order = bull_free_elimination_order(&g).unwrap();
            assert!(check_lbfs_nose_free(&g, &order).is_clean());
        }
    }

    #[test]
    fn nose_check_matches_induced_subgraph_search() {
        use crate::building::find_bull_with_nose;
        for g in [squared_nine_cycle(), domino(), cycle(7)] {
            let mut alive = VertexSet::full(g.vertex_count());
            for v in g.vertices() {
                let via_mask = find_bull_with_nose_within(&g, v, &alive).is_some();
                let (h, map) = g.induced_subgraph(&alive);
                let v_local = map.binary_search(&v).unwrap();
                let via_subgraph = find_bull_with_nose(&h, v_local).is_some();
                assert_eq!(via_mask, via_subgraph);
                alive.remove(v);
                if alive.is_empty() {
                    break;
                }
            }
        }
    }
}
