//! Rooted neighborhood extraction.

use std::collections::HashMap;

use super::DirectedMultigraph;
use crate::error::{Error, Result};

/// Which edges at the boundary of a ball are kept.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, serde::Serialize, serde::Deserialize)]
#[serde(rename_all = "lowercase")]
pub enum BallMode {
    /// All edges with both endpoints inside the ball.
    Full,
    /// Edges whose endpoints are both at distance exactly `r` from the root
    /// are dropped.
    Minus,
}

/// The radius-`r` neighborhood of a root vertex, relabeled to local ids.
/// Local id 0 is the root and vertices appear in BFS discovery order, so the
/// extraction is deterministic.
#[derive(Debug, Clone)]
pub struct RootedBall {
    pub graph: DirectedMultigraph,
    pub radius: usize,
    pub mode: BallMode,
    /// Distance from the root (in the underlying undirected metric), per
    /// local vertex id.
    pub dist: Vec<usize>,
    /// Original vertex id per local id.
    pub original_ids: Vec<usize>,
}

impl RootedBall {
    pub const ROOT: usize = 0;
}

/// BFS ball of radius `r` around `root` in the undirected metric, with edge
/// directions retained in the extracted subgraph.
pub fn extract_ball(
    g: &DirectedMultigraph,
    root: usize,
    r: usize,
    mode: BallMode,
) -> Result<RootedBall> {
    if root >= g.vertex_count() {
        return Err(Error::input(format!(
            "root {root} out of range (n = {})",
            g.vertex_count()
        )));
    }
    let mut local_of = HashMap::new();
    let mut original_ids = vec![root];
    let mut dist = vec![0usize];
    local_of.insert(root, 0usize);

    let mut frontier = 0usize;
    while frontier < original_ids.len() {
        let v = original_ids[frontier];
        let d = dist[frontier];
        frontier += 1;
        if d == r {
            continue;
        }
        for &e in g.out_edges(v) {
            let (_, h) = g.edge(e);
            if let std::collections::hash_map::Entry::Vacant(e) = local_of.entry(h) {
                e.insert(original_ids.len());
                original_ids.push(h);
                dist.push(d + 1);
            }
        }
        for &e in g.in_edges(v) {
            let (t, _) = g.edge(e);
            if let std::collections::hash_map::Entry::Vacant(e) = local_of.entry(t) {
                e.insert(original_ids.len());
                original_ids.push(t);
                dist.push(d + 1);
            }
        }
    }

    // Induced edges, scanned in (local tail, edge id) order.
    let mut edges = Vec::new();
    for (local_t, &v) in original_ids.iter().enumerate() {
        for &e in g.out_edges(v) {
            let (_, h) = g.edge(e);
            if let Some(&local_h) = local_of.get(&h) {
                if mode == BallMode::Minus && dist[local_t] == r && dist[local_h] == r {
                    continue;
                }
                edges.push((local_t, local_h));
            }
        }
    }

    let graph = super::build_graph(original_ids.len(), edges).expect("local ids are dense");
    Ok(RootedBall {
        graph,
        radius: r,
        mode,
        dist,
        original_ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    #[test]
    fn radius_zero_is_a_point() {
        let g = build_graph(3, vec![(0, 1), (1, 2)]).unwrap();
        let b = extract_ball(&g, 1, 0, BallMode::Full).unwrap();
        assert_eq!(b.graph.vertex_count(), 1);
        assert_eq!(b.graph.edge_count(), 0);
        assert_eq!(b.original_ids, vec![1]);
    }

    #[test]
    fn star_radius_one_is_whole_star() {
        let g = build_graph(4, vec![(0, 1), (0, 2), (0, 3)]).unwrap();
        let b = extract_ball(&g, 0, 1, BallMode::Full).unwrap();
        assert_eq!(b.graph.vertex_count(), 4);
        assert_eq!(b.graph.edge_count(), 3);
    }

    #[test]
    fn alternating_six_cycle_minus_ball_is_a_path() {
        // Edges (2k, 2k-1) and (2k, 2k+1) mod 6: even vertices point at both
        // odd neighbors. Hand BFS from any root at r = 2: 5 vertices, the
        // antipodal vertex stays out, and the two distance-2 vertices are not
        // adjacent to each other, so minus and full both keep the 4 edges of
        // an alternating path.
        let edges = vec![(0, 5), (0, 1), (2, 1), (2, 3), (4, 3), (4, 5)];
        let g = build_graph(6, edges).unwrap();
        for root in 0..6 {
            let b = extract_ball(&g, root, 2, BallMode::Minus).unwrap();
            assert_eq!(b.graph.vertex_count(), 5, "root {root}");
            assert_eq!(b.graph.edge_count(), 4, "root {root}");
            let full = extract_ball(&g, root, 2, BallMode::Full).unwrap();
            assert_eq!(full.graph.edge_count(), 4, "root {root}");
        }
        let b3 = extract_ball(&g, 0, 3, BallMode::Full).unwrap();
        assert_eq!(b3.graph.vertex_count(), 6);
        assert_eq!(b3.graph.edge_count(), 6);
    }

    #[test]
    fn minus_edges_subset_of_full() {
        let g = build_graph(5, vec![(0, 1), (1, 2), (2, 3), (3, 1), (4, 2), (2, 4)]).unwrap();
        for r in 0..4 {
            let full = extract_ball(&g, 0, r, BallMode::Full).unwrap();
            let minus = extract_ball(&g, 0, r, BallMode::Minus).unwrap();
            assert_eq!(full.graph.vertex_count(), minus.graph.vertex_count());
            assert!(minus.graph.edge_count() <= full.graph.edge_count());
            let full_set: Vec<_> = full.graph.edges().to_vec();
            for e in minus.graph.edges() {
                assert!(full_set.contains(e));
            }
        }
    }
}
