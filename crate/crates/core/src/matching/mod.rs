//! Directed matchings, the matching ratio and the controllability parameter.
//!
//! A directed matching is an edge subset in which every vertex has in- and
//! out-degree at most one. All matchers work on the bipartite representation
//! and pull the result back through the edge-id-preserving bijection, so a
//! matched edge id means the same thing in both pictures. The matching ratio
//! is m(G) = |M_max| / |V| and the controllability parameter is
//! n_D = 1 - m(G): the fraction of driver vertices, those with matching
//! in-degree 0.

mod brute_force;
pub mod hopcroft_karp;
mod karp_sipser;

pub use brute_force::{brute_force_max_matching, BRUTE_FORCE_MAX_EDGES};
pub use hopcroft_karp::BipartiteMatching;

use rand::seq::SliceRandom;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{bipartite_representation, BipartiteGraph, DirectedMultigraph};

/// A directed matching, stored as sorted edge ids of the host graph.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Matching {
    edge_ids: Vec<usize>,
}

impl Matching {
    pub fn from_bipartite(bm: &BipartiteMatching) -> Self {
        Matching {
            edge_ids: bm.edge_ids(),
        }
    }

    pub fn size(&self) -> usize {
        self.edge_ids.len()
    }

    pub fn edge_ids(&self) -> &[usize] {
        &self.edge_ids
    }

    /// Checks the matching certificates against a host graph: every vertex
    /// has in-degree and out-degree at most 1 in the induced subgraph.
    pub fn is_valid(&self, g: &DirectedMultigraph) -> bool {
        let mut tail_used = vec![false; g.vertex_count()];
        let mut head_used = vec![false; g.vertex_count()];
        for &e in &self.edge_ids {
            if e >= g.edge_count() {
                return false;
            }
            let (t, h) = g.edge(e);
            if tail_used[t] || head_used[h] {
                return false;
            }
            tail_used[t] = true;
            head_used[h] = true;
        }
        true
    }

    /// Vertices with in-degree 0 in the matching: the driver vertices.
    pub fn drivers(&self, g: &DirectedMultigraph) -> Vec<usize> {
        let mut is_head = vec![false; g.vertex_count()];
        for &e in &self.edge_ids {
            is_head[g.edge(e).1] = true;
        }
        (0..g.vertex_count()).filter(|&v| !is_head[v]).collect()
    }
}

/// Which matcher [`ratio`] runs.
#[derive(Debug, Clone, Copy, PartialEq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "method")]
pub enum MatchMethod {
    Exact,
    KarpSipser { seed: u64 },
    Bounded { max_aug_len: usize, seed: u64 },
}

/// Maximum directed matching via layered shortest-augmenting-path phases on
/// the bipartite representation.
pub fn max_matching(g: &DirectedMultigraph) -> Matching {
    let bip = bipartite_representation(g);
    Matching::from_bipartite(&hopcroft_karp::maximum(&bip))
}

/// A matching with no augmenting path of at most `max_aug_len` edges in the
/// bipartite representation. `max_aug_len` must be odd (augmenting paths
/// have odd edge length); the sweep order over vertices is seeded.
pub fn bounded_matching(g: &DirectedMultigraph, max_aug_len: usize, seed: u64) -> Result<Matching> {
    let bip = bipartite_representation(g);
    let bm = bounded_matching_bipartite(&bip, max_aug_len, seed)?;
    Ok(Matching::from_bipartite(&bm))
}

/// Bipartite-level bounded matcher, also used directly on trees split by
/// depth parity.
pub fn bounded_matching_bipartite(
    bip: &BipartiteGraph,
    max_aug_len: usize,
    seed: u64,
) -> Result<BipartiteMatching> {
    if max_aug_len.is_multiple_of(2) {
        return Err(Error::input(format!(
            "augmenting-path length bound must be odd, got {max_aug_len}"
        )));
    }
    let mut order: Vec<usize> = (0..bip.left_count()).collect();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    order.shuffle(&mut rng);
    Ok(hopcroft_karp::bounded(bip, max_aug_len, &order))
}

/// Karp–Sipser greedy matching on the bipartite representation.
pub fn karp_sipser(g: &DirectedMultigraph, seed: u64) -> Matching {
    let bip = bipartite_representation(g);
    Matching::from_bipartite(&karp_sipser::karp_sipser(&bip, seed))
}

/// Maximum matching of an arbitrary bipartite graph (exposed for callers
/// that build their own two-sided structure).
pub fn maximum_matching_bipartite(bip: &BipartiteGraph) -> BipartiteMatching {
    hopcroft_karp::maximum(bip)
}

/// Matching size, matching ratio, controllability parameter and driver set.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct RatioReport {
    pub n: usize,
    pub matching_size: usize,
    /// Matching ratio |M| / n as a double; the exact rational is
    /// (`matching_size`, `n`).
    pub m: f64,
    /// Controllability parameter 1 - m; exactly (n - |M|) / n.
    pub n_d: f64,
    pub drivers: Vec<usize>,
}

impl RatioReport {
    pub fn m_exact(&self) -> (usize, usize) {
        (self.matching_size, self.n)
    }

    pub fn n_d_exact(&self) -> (usize, usize) {
        (self.n - self.matching_size, self.n)
    }
}

/// Computes the matching ratio report with the requested method.
pub fn ratio(g: &DirectedMultigraph, method: MatchMethod) -> Result<RatioReport> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input(
            "matching ratio is undefined on the empty graph",
        ));
    }
    let matching = match method {
        MatchMethod::Exact => max_matching(g),
        MatchMethod::KarpSipser { seed } => karp_sipser(g, seed),
        MatchMethod::Bounded { max_aug_len, seed } => bounded_matching(g, max_aug_len, seed)?,
    };
    debug_assert!(matching.is_valid(g));
    let size = matching.size();
    Ok(RatioReport {
        n,
        matching_size: size,
        m: size as f64 / n as f64,
        n_d: (n - size) as f64 / n as f64,
        drivers: matching.drivers(g),
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn alternating_six_cycle() -> DirectedMultigraph {
        build_graph(6, vec![(0, 5), (0, 1), (2, 1), (2, 3), (4, 3), (4, 5)]).unwrap()
    }

    #[test]
    fn three_cycle_has_full_matching() {
        let g = build_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let m = max_matching(&g);
        assert_eq!(m.size(), 3);
        assert!(m.is_valid(&g));
        let r = ratio(&g, MatchMethod::Exact).unwrap();
        assert_eq!(r.m, 1.0);
        assert_eq!(r.n_d, 0.0);
        assert!(r.drivers.is_empty());
    }

    #[test]
    fn out_star_matches_once() {
        let k = 5;
        let edges: Vec<_> = (1..=k).map(|v| (0usize, v)).collect();
        let g = build_graph(k + 1, edges).unwrap();
        assert_eq!(max_matching(&g).size(), 1);
    }

    #[test]
    fn alternating_six_cycle_is_half_matched() {
        let g = alternating_six_cycle();
        let exact = max_matching(&g);
        assert_eq!(exact.size(), brute_force_max_matching(&g).unwrap());
        assert_eq!(exact.size(), 3);
        let r = ratio(&g, MatchMethod::Exact).unwrap();
        assert_eq!(r.m, 0.5);
        assert_eq!(r.n_d, 0.5);
        assert_eq!(r.drivers.len(), 3);
    }

    #[test]
    fn single_vertex_ratio() {
        let g = build_graph(1, vec![]).unwrap();
        let r = ratio(&g, MatchMethod::Exact).unwrap();
        assert_eq!(r.m, 0.0);
        assert_eq!(r.n_d, 1.0);
        assert_eq!(r.drivers, vec![0]);
    }

    #[test]
    fn empty_graph_ratio_rejected() {
        let g = build_graph(0, vec![]).unwrap();
        assert!(ratio(&g, MatchMethod::Exact).is_err());
    }

    #[test]
    fn loops_are_matchable() {
        let g = build_graph(2, vec![(0, 0), (1, 1)]).unwrap();
        assert_eq!(max_matching(&g).size(), 2);
    }

    #[test]
    fn exact_rational_identity() {
        let g = alternating_six_cycle();
        let r = ratio(&g, MatchMethod::Exact).unwrap();
        let (mn, md) = r.m_exact();
        let (dn, dd) = r.n_d_exact();
        assert_eq!(md, dd);
        assert_eq!(mn + dn, md); // m + n_D = 1 in exact arithmetic
        assert_eq!(r.drivers.len(), r.n - r.matching_size);
    }

    #[test]
    fn bounded_rejects_even_length() {
        let g = alternating_six_cycle();
        assert!(bounded_matching(&g, 2, 0).is_err());
        assert!(bounded_matching(&g, 0, 0).is_err());
    }

    #[test]
    fn bounded_single_edge() {
        let g = build_graph(2, vec![(0, 1)]).unwrap();
        let m = bounded_matching(&g, 1, 7).unwrap();
        assert_eq!(m.size(), 1);
    }

    #[test]
    fn bounded_with_large_t_is_maximum() {
        let g = alternating_six_cycle();
        // Diameter of the bipartite representation is at most 12; T = 25
        // exceeds any possible augmenting path.
        let full = max_matching(&g).size();
        for seed in 0..5 {
            assert_eq!(bounded_matching(&g, 25, seed).unwrap().size(), full);
        }
    }

    #[test]
    fn bounded_matching_deterministic_per_seed() {
        let g = build_graph(
            8,
            vec![
                (0, 1),
                (1, 2),
                (2, 3),
                (4, 3),
                (4, 5),
                (6, 5),
                (6, 7),
                (0, 7),
            ],
        )
        .unwrap();
        let a = bounded_matching(&g, 3, 42).unwrap();
        let b = bounded_matching(&g, 3, 42).unwrap();
        assert_eq!(a.edge_ids(), b.edge_ids());
    }

    #[test]
    fn karp_sipser_examples() {
        let path = build_graph(3, vec![(0, 1), (1, 2)]).unwrap();
        let cycle = build_graph(3, vec![(0, 1), (1, 2), (2, 0)]).unwrap();
        let empty = build_graph(4, vec![]).unwrap();
        for seed in 0..10 {
            assert_eq!(karp_sipser(&path, seed).size(), 2);
            assert_eq!(karp_sipser(&cycle, seed).size(), 3);
            assert_eq!(karp_sipser(&empty, seed).size(), 0);
        }
    }
}
