//! Oracles shared by the integration suites. Everything here is independent
//! of the library's algorithm choices: a plain recursive Kuhn matcher, an
//! exhaustive alternating-path search, and by-hand random graph builders.
#![allow(dead_code)] // each test binary uses its own subset

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use netcontrol::graph::{build_graph, BipartiteGraph, DirectedMultigraph};
use netcontrol::matching::{BipartiteMatching, Matching};

/// Maximum bipartite matching by single augmenting-path DFS (Kuhn's
/// algorithm); deliberately a different algorithm family from the library's
/// layered matcher.
pub fn kuhn_max_matching(n_left: usize, n_right: usize, edges: &[(usize, usize)]) -> usize {
    let mut adj = vec![Vec::new(); n_left];
    for &(l, r) in edges {
        adj[l].push(r);
    }
    let mut match_right: Vec<Option<usize>> = vec![None; n_right];
    let mut size = 0;
    for l in 0..n_left {
        let mut seen = vec![false; n_right];
        if kuhn_try(l, &adj, &mut seen, &mut match_right) {
            size += 1;
        }
    }
    size
}

fn kuhn_try(
    l: usize,
    adj: &[Vec<usize>],
    seen: &mut [bool],
    match_right: &mut [Option<usize>],
) -> bool {
    for &r in &adj[l] {
        if seen[r] {
            continue;
        }
        seen[r] = true;
        let free = match match_right[r] {
            None => true,
            Some(l2) => kuhn_try(l2, adj, seen, match_right),
        };
        if free {
            match_right[r] = Some(l);
            return true;
        }
    }
    false
}

/// Rebuilds the per-side match arrays of a directed matching viewed on the
/// bipartite representation (edge ids coincide).
pub fn matching_as_bipartite(bip: &BipartiteGraph, m: &Matching) -> BipartiteMatching {
    let mut bm = BipartiteMatching {
        match_left: vec![None; bip.left_count()],
        match_right: vec![None; bip.right_count()],
        size: m.size(),
    };
    for &e in m.edge_ids() {
        let (l, r) = bip.edge(e);
        bm.match_left[l] = Some(e);
        bm.match_right[r] = Some(e);
    }
    bm
}

/// Exhaustive search for an augmenting path of at most `max_edges` edges:
/// simple alternating paths from a free left vertex to a free right vertex,
/// with full backtracking. Exponential, fine on small graphs.
pub fn has_augmenting_path_at_most(
    bip: &BipartiteGraph,
    bm: &BipartiteMatching,
    max_edges: usize,
) -> bool {
    let mut used_l = vec![false; bip.left_count()];
    let mut used_r = vec![false; bip.right_count()];
    for l in 0..bip.left_count() {
        if bm.match_left[l].is_none() {
            used_l[l] = true;
            if aug_dfs(bip, bm, l, max_edges, &mut used_l, &mut used_r) {
                return true;
            }
            used_l[l] = false;
        }
    }
    false
}

fn aug_dfs(
    bip: &BipartiteGraph,
    bm: &BipartiteMatching,
    l: usize,
    budget: usize,
    used_l: &mut [bool],
    used_r: &mut [bool],
) -> bool {
    if budget == 0 {
        return false;
    }
    for &e in bip.left_edges(l) {
        if bm.match_left[l] == Some(e) {
            continue; // path edges out of a left vertex must be non-matching
        }
        let (_, r) = bip.edge(e);
        if used_r[r] {
            continue;
        }
        match bm.match_right[r] {
            None => return true,
            Some(me) if budget >= 3 => {
                let l2 = bip.edge(me).0;
                if used_l[l2] {
                    continue;
                }
                used_r[r] = true;
                used_l[l2] = true;
                if aug_dfs(bip, bm, l2, budget - 2, used_l, used_r) {
                    return true;
                }
                used_r[r] = false;
                used_l[l2] = false;
            }
            Some(_) => {}
        }
    }
    false
}

/// Random multigraph with `n` in 1..=max_n and up to `max_edges` arbitrary
/// arcs (loops and parallels included).
pub fn random_graph(rng: &mut ChaCha8Rng, max_n: usize, max_edges: usize) -> DirectedMultigraph {
    let n = rng.random_range(1..=max_n);
    let e = rng.random_range(0..=max_edges);
    let edges = (0..e)
        .map(|_| (rng.random_range(0..n), rng.random_range(0..n)))
        .collect();
    build_graph(n, edges).unwrap()
}

/// Random directed tree: vertex v >= 1 attaches to a uniform earlier vertex,
/// edge orientation by fair coin.
pub fn random_directed_tree(rng: &mut ChaCha8Rng, n: usize) -> DirectedMultigraph {
    let mut edges = Vec::with_capacity(n.saturating_sub(1));
    for v in 1..n {
        let parent = rng.random_range(0..v);
        if rng.random::<bool>() {
            edges.push((parent, v));
        } else {
            edges.push((v, parent));
        }
    }
    build_graph(n, edges).unwrap()
}

/// Seeded rng helper for test corpora.
pub fn rng(seed: u64) -> ChaCha8Rng {
    ChaCha8Rng::seed_from_u64(seed)
}
