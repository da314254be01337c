//! Directed multigraph storage and its bipartite representation.
//!
//! Vertices are dense ids `0..n`. Edges are ordered `(tail, head)` pairs;
//! the edge id is the position in the edge list, so identically-seeded runs
//! reproduce identical graphs bit for bit. Parallel edges and loops are
//! allowed everywhere. A loop contributes 1 to the in-degree, 1 to the
//! out-degree and 2 to the total degree.

mod ball;
mod canon;
pub mod io;

pub use ball::{extract_ball, BallMode, RootedBall};
pub use canon::{canonical_code, canonical_code_rooted, ClassCode, DEFAULT_BALL_CAP};

use crate::error::{Error, Result};

/// A finite directed multigraph with stable edge ids.
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct DirectedMultigraph {
    n: usize,
    edges: Vec<(usize, usize)>,
    // CSR indices over edge ids, one keyed by tail, one by head.
    out_start: Vec<usize>,
    out_edges: Vec<usize>,
    in_start: Vec<usize>,
    in_edges: Vec<usize>,
}

/// Builds a graph from an edge list. Fails if any endpoint id is `>= n`.
pub fn build_graph(n: usize, edges: Vec<(usize, usize)>) -> Result<DirectedMultigraph> {
    for (i, &(t, h)) in edges.iter().enumerate() {
        if t >= n || h >= n {
            return Err(Error::input(format!(
                "edge {i} = ({t}, {h}) has an endpoint out of range (n = {n})"
            )));
        }
    }
    Ok(DirectedMultigraph::new_unchecked(n, edges))
}

impl DirectedMultigraph {
    fn new_unchecked(n: usize, edges: Vec<(usize, usize)>) -> Self {
        let mut out_start = vec![0usize; n + 1];
        let mut in_start = vec![0usize; n + 1];
        for &(t, h) in &edges {
            out_start[t + 1] += 1;
            in_start[h + 1] += 1;
        }
        for v in 0..n {
            out_start[v + 1] += out_start[v];
            in_start[v + 1] += in_start[v];
        }
        let mut out_edges = vec![0usize; edges.len()];
        let mut in_edges = vec![0usize; edges.len()];
        let mut out_fill = out_start.clone();
        let mut in_fill = in_start.clone();
        for (e, &(t, h)) in edges.iter().enumerate() {
            out_edges[out_fill[t]] = e;
            out_fill[t] += 1;
            in_edges[in_fill[h]] = e;
            in_fill[h] += 1;
        }
        DirectedMultigraph {
            n,
            edges,
            out_start,
            out_edges,
            in_start,
            in_edges,
        }
    }

    pub fn vertex_count(&self) -> usize {
        self.n
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge ids with tail `v`, in ascending edge-id order.
    pub fn out_edges(&self, v: usize) -> &[usize] {
        &self.out_edges[self.out_start[v]..self.out_start[v + 1]]
    }

    /// Edge ids with head `v`, in ascending edge-id order.
    pub fn in_edges(&self, v: usize) -> &[usize] {
        &self.in_edges[self.in_start[v]..self.in_start[v + 1]]
    }

    pub fn out_degree(&self, v: usize) -> usize {
        self.out_start[v + 1] - self.out_start[v]
    }

    pub fn in_degree(&self, v: usize) -> usize {
        self.in_start[v + 1] - self.in_start[v]
    }

    /// Total degree; a loop counts twice.
    pub fn degree(&self, v: usize) -> usize {
        self.out_degree(v) + self.in_degree(v)
    }

    pub fn out_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.out_degree(v)).collect()
    }

    pub fn in_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.in_degree(v)).collect()
    }

    pub fn total_degrees(&self) -> Vec<usize> {
        (0..self.n).map(|v| self.degree(v)).collect()
    }
}

/// The bipartite representation: each vertex `v` splits into a tail copy
/// `v⁻` (left) and a head copy `v⁺` (right), and the directed edge `(v, w)`
/// becomes the undirected edge `{v⁻, w⁺}`. Edge ids coincide with the
/// source graph's, which realizes the size-preserving bijection between
/// directed matchings of the graph and matchings of its representation.
#[derive(Debug, Clone)]
pub struct BipartiteGraph {
    n_left: usize,
    n_right: usize,
    edges: Vec<(usize, usize)>,
    left_start: Vec<usize>,
    left_edges: Vec<usize>,
}

pub fn bipartite_representation(g: &DirectedMultigraph) -> BipartiteGraph {
    BipartiteGraph::from_edges(g.vertex_count(), g.vertex_count(), g.edges().to_vec())
}

impl BipartiteGraph {
    /// Builds from `(left, right)` pairs; edge id = position in `edges`.
    pub fn from_edges(n_left: usize, n_right: usize, edges: Vec<(usize, usize)>) -> Self {
        debug_assert!(edges.iter().all(|&(l, r)| l < n_left && r < n_right));
        let mut left_start = vec![0usize; n_left + 1];
        for &(l, _) in &edges {
            left_start[l + 1] += 1;
        }
        for v in 0..n_left {
            left_start[v + 1] += left_start[v];
        }
        let mut left_edges = vec![0usize; edges.len()];
        let mut fill = left_start.clone();
        for (e, &(l, _)) in edges.iter().enumerate() {
            left_edges[fill[l]] = e;
            fill[l] += 1;
        }
        BipartiteGraph {
            n_left,
            n_right,
            edges,
            left_start,
            left_edges,
        }
    }

    pub fn left_count(&self) -> usize {
        self.n_left
    }

    pub fn right_count(&self) -> usize {
        self.n_right
    }

    pub fn edge_count(&self) -> usize {
        self.edges.len()
    }

    pub fn edges(&self) -> &[(usize, usize)] {
        &self.edges
    }

    pub fn edge(&self, e: usize) -> (usize, usize) {
        self.edges[e]
    }

    /// Edge ids incident to left vertex `l`, ascending.
    pub fn left_edges(&self, l: usize) -> &[usize] {
        &self.left_edges[self.left_start[l]..self.left_start[l + 1]]
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn build_single_edge() {
        let g = build_graph(2, vec![(0, 1)]).unwrap();
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.in_degree(1), 1);
        assert_eq!(g.in_degree(0), 0);
        assert_eq!(g.degree(0), 1);
    }

    #[test]
    fn loop_counts_once_per_side() {
        let g = build_graph(1, vec![(0, 0)]).unwrap();
        assert_eq!(g.in_degree(0), 1);
        assert_eq!(g.out_degree(0), 1);
        assert_eq!(g.degree(0), 2);
    }

    #[test]
    fn parallel_edges_preserved() {
        let g = build_graph(3, vec![(0, 1), (0, 1)]).unwrap();
        assert_eq!(g.edge_count(), 2);
        assert_eq!(g.out_degree(0), 2);
        assert_eq!(g.in_degree(1), 2);
        assert_eq!(g.out_edges(0), &[0, 1]);
    }

    #[test]
    fn out_of_range_rejected() {
        assert!(build_graph(2, vec![(0, 2)]).is_err());
        assert!(build_graph(0, vec![(0, 0)]).is_err());
    }

    #[test]
    fn bipartite_edge_count_and_incidence() {
        let g = build_graph(2, vec![(0, 1)]).unwrap();
        let b = bipartite_representation(&g);
        assert_eq!(b.edge_count(), 1);
        assert_eq!(b.edge(0), (0, 1));

        let g = build_graph(1, vec![(0, 0)]).unwrap();
        let b = bipartite_representation(&g);
        assert_eq!(b.edge_count(), 1);
        assert_eq!(b.edge(0), (0, 0)); // loop becomes {0⁻, 0⁺}, a legal matching edge
    }
}
