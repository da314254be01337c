//! Karp–Sipser greedy matching on bipartite graphs: repeatedly match a
//! pendant (degree-1) vertex to its unique neighbor; when no pendant exists,
//! match a uniformly random remaining edge. Saturated vertices and their
//! edges are removed as the matching grows, so the result is maximal. Exact
//! on forests, where the random phase never fires.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use super::hopcroft_karp::BipartiteMatching;
use crate::graph::BipartiteGraph;

pub fn karp_sipser(g: &BipartiteGraph, seed: u64) -> BipartiteMatching {
    let nl = g.left_count();
    let nr = g.right_count();
    let ne = g.edge_count();
    let mut rng = ChaCha8Rng::seed_from_u64(seed);

    // Combined vertex space: left ids as-is, right ids offset by nl.
    let mut incidence: Vec<Vec<usize>> = vec![Vec::new(); nl + nr];
    for (e, &(l, r)) in g.edges().iter().enumerate() {
        incidence[l].push(e);
        incidence[nl + r].push(e);
    }
    let mut degree: Vec<usize> = incidence.iter().map(Vec::len).collect();
    let mut saturated = vec![false; nl + nr];
    let mut alive = vec![true; ne];
    let mut alive_count = ne;
    let mut pool: Vec<usize> = (0..ne).collect();
    let mut pendants: Vec<usize> = (0..nl + nr).filter(|&x| degree[x] == 1).collect();

    let mut m = BipartiteMatching {
        match_left: vec![None; nl],
        match_right: vec![None; nr],
        size: 0,
    };

    while alive_count > 0 {
        let e = if let Some(x) = pop_pendant(&mut pendants, &degree, &saturated) {
            *incidence[x]
                .iter()
                .find(|&&e| alive[e])
                .expect("degree 1 vertex has an edge")
        } else {
            loop {
                let idx = rng.random_range(0..pool.len());
                let e = pool[idx];
                if alive[e] {
                    break e;
                }
                pool.swap_remove(idx);
            }
        };

        let (l, r) = g.edge(e);
        m.match_left[l] = Some(e);
        m.match_right[r] = Some(e);
        m.size += 1;
        saturated[l] = true;
        saturated[nl + r] = true;
        for x in [l, nl + r] {
            for &dead in &incidence[x] {
                if alive[dead] {
                    alive[dead] = false;
                    alive_count -= 1;
                    let (dl, dr) = g.edge(dead);
                    for y in [dl, nl + dr] {
                        degree[y] -= 1;
                        if degree[y] == 1 && !saturated[y] {
                            pendants.push(y);
                        }
                    }
                }
            }
        }
    }
    m
}

fn pop_pendant(pendants: &mut Vec<usize>, degree: &[usize], saturated: &[bool]) -> Option<usize> {
    while let Some(x) = pendants.pop() {
        if degree[x] == 1 && !saturated[x] {
            return Some(x);
        }
    }
    None
}
