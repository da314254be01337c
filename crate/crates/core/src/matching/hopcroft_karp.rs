//! Layered shortest-augmenting-path matching on bipartite graphs.
//!
//! Each phase runs a BFS layering from the free left vertices and then
//! augments along length-minimal paths found by cursor-based DFS. Phases
//! strictly increase the shortest augmenting length, so stopping once that
//! length exceeds a bound `T` leaves a matching with no augmenting path of
//! at most `T` edges; running to exhaustion yields a maximum matching in
//! O(E sqrt V). Everything is deterministic: left vertices are processed in
//! the caller's order and adjacency in ascending edge-id order.

use crate::graph::BipartiteGraph;

#[derive(Debug, Clone)]
pub struct BipartiteMatching {
    /// Matched edge id per left vertex.
    pub match_left: Vec<Option<usize>>,
    /// Matched edge id per right vertex.
    pub match_right: Vec<Option<usize>>,
    pub size: usize,
}

impl BipartiteMatching {
    fn empty(g: &BipartiteGraph) -> Self {
        BipartiteMatching {
            match_left: vec![None; g.left_count()],
            match_right: vec![None; g.right_count()],
            size: 0,
        }
    }

    /// Matched edge ids in ascending order.
    pub fn edge_ids(&self) -> Vec<usize> {
        let mut ids: Vec<usize> = self.match_left.iter().flatten().copied().collect();
        ids.sort_unstable();
        ids
    }
}

/// Maximum matching; ties broken by lowest edge id.
pub fn maximum(g: &BipartiteGraph) -> BipartiteMatching {
    let order: Vec<usize> = (0..g.left_count()).collect();
    phases(g, usize::MAX, &order)
}

/// Matching with no augmenting path of at most `max_len_edges` edges,
/// sweeping left vertices in `order`.
pub fn bounded(g: &BipartiteGraph, max_len_edges: usize, order: &[usize]) -> BipartiteMatching {
    phases(g, max_len_edges, order)
}

const INF: usize = usize::MAX;

fn phases(g: &BipartiteGraph, max_len_edges: usize, order: &[usize]) -> BipartiteMatching {
    let mut m = BipartiteMatching::empty(g);
    if g.edge_count() == 0 {
        return m;
    }
    let nl = g.left_count();
    let mut dist = vec![INF; nl];
    let mut ptr = vec![0usize; nl];
    let mut queue: Vec<usize> = Vec::with_capacity(nl);

    loop {
        // BFS layering over left vertices: free lefts are layer 0; steps go
        // left --(any edge)--> right --(matched edge)--> left.
        dist.fill(INF);
        queue.clear();
        for &l in order {
            if m.match_left[l].is_none() {
                dist[l] = 0;
                queue.push(l);
            }
        }
        let mut shortest = INF; // layer of the last left vertex on a shortest augmenting path
        let mut qi = 0;
        while qi < queue.len() {
            let l = queue[qi];
            qi += 1;
            if dist[l] >= shortest {
                continue;
            }
            for &e in g.left_edges(l) {
                let (_, r) = g.edge(e);
                match m.match_right[r] {
                    None => shortest = shortest.min(dist[l]),
                    Some(me) => {
                        let l2 = g.edge(me).0;
                        if dist[l2] == INF {
                            dist[l2] = dist[l] + 1;
                            queue.push(l2);
                        }
                    }
                }
            }
        }
        if shortest == INF {
            break; // no augmenting path exists at all
        }
        if 2 * shortest + 1 > max_len_edges {
            break;
        }

        ptr.fill(0);
        for &l in order {
            if m.match_left[l].is_none() && dist[l] == 0 {
                try_augment(g, l, shortest, &mut dist, &mut ptr, &mut m);
            }
        }
    }
    m
}

/// Iterative DFS along layer-increasing alternating paths ending at a free
/// right vertex reached from layer `shortest`. Exhausted vertices are marked
/// dead for the rest of the phase.
fn try_augment(
    g: &BipartiteGraph,
    start: usize,
    shortest: usize,
    dist: &mut [usize],
    ptr: &mut [usize],
    m: &mut BipartiteMatching,
) -> bool {
    let mut stack = vec![start];
    let mut path_edges: Vec<usize> = Vec::new();
    'outer: while let Some(&l) = stack.last() {
        let adj = g.left_edges(l);
        while ptr[l] < adj.len() {
            let e = adj[ptr[l]];
            ptr[l] += 1;
            let (_, r) = g.edge(e);
            match m.match_right[r] {
                None => {
                    if dist[l] == shortest {
                        path_edges.push(e);
                        for (i, &li) in stack.iter().enumerate() {
                            let ei = path_edges[i];
                            let (_, ri) = g.edge(ei);
                            m.match_left[li] = Some(ei);
                            m.match_right[ri] = Some(ei);
                        }
                        m.size += 1;
                        return true;
                    }
                }
                Some(me) => {
                    let l2 = g.edge(me).0;
                    if dist[l2] == dist[l] + 1 && dist[l2] <= shortest {
                        path_edges.push(e);
                        stack.push(l2);
                        continue 'outer;
                    }
                }
            }
        }
        dist[l] = INF;
        stack.pop();
        path_edges.pop();
    }
    false
}
