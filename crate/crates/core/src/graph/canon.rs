//! Exact canonical codes for rooted directed multigraphs.
//!
//! Two balls receive the same code iff they are rooted-directed-isomorphic
//! (respecting edge multiplicities). The code is computed by iterative color
//! refinement with backtracking over the refined cells, taking the
//! lexicographically least serialized relabeling; discovered automorphisms
//! prune branches that explore equivalent relabelings, which keeps highly
//! symmetric inputs (stars, regular trees) tractable.

use super::{DirectedMultigraph, RootedBall};
use crate::error::{Error, Result};

/// Default cap on the number of vertices a ball may have before
/// canonicalization refuses to run.
pub const DEFAULT_BALL_CAP: usize = 4096;

/// Canonical invariant of a rooted directed multigraph.
#[derive(Debug, Clone, PartialEq, Eq, PartialOrd, Ord, Hash)]
pub struct ClassCode(Box<[u8]>);

impl ClassCode {
    pub fn as_bytes(&self) -> &[u8] {
        &self.0
    }

    pub fn to_hex(&self) -> String {
        let mut s = String::with_capacity(self.0.len() * 2);
        for b in self.0.iter() {
            s.push_str(&format!("{b:02x}"));
        }
        s
    }

    pub fn from_hex(hex: &str) -> Result<Self> {
        if !hex.len().is_multiple_of(2) || !hex.bytes().all(|b| b.is_ascii_hexdigit()) {
            return Err(Error::input(format!("bad class code hex: {hex:?}")));
        }
        let bytes = (0..hex.len() / 2)
            .map(|i| u8::from_str_radix(&hex[2 * i..2 * i + 2], 16).unwrap())
            .collect();
        Ok(ClassCode(bytes))
    }
}

impl std::fmt::Display for ClassCode {
    fn fmt(&self, f: &mut std::fmt::Formatter<'_>) -> std::fmt::Result {
        f.write_str(&self.to_hex())
    }
}

impl serde::Serialize for ClassCode {
    fn serialize<S: serde::Serializer>(&self, s: S) -> std::result::Result<S::Ok, S::Error> {
        s.serialize_str(&self.to_hex())
    }
}

impl<'de> serde::Deserialize<'de> for ClassCode {
    fn deserialize<D: serde::Deserializer<'de>>(d: D) -> std::result::Result<Self, D::Error> {
        let s = String::deserialize(d)?;
        ClassCode::from_hex(&s).map_err(serde::de::Error::custom)
    }
}

/// Canonical code of a ball, rooted at its local root.
pub fn canonical_code(ball: &RootedBall, cap: usize) -> Result<ClassCode> {
    canonical_code_rooted(&ball.graph, RootedBall::ROOT, cap)
}

/// Canonical code of `(g, root)`.
pub fn canonical_code_rooted(g: &DirectedMultigraph, root: usize, cap: usize) -> Result<ClassCode> {
    let n = g.vertex_count();
    if root >= n {
        return Err(Error::input(format!("root {root} out of range (n = {n})")));
    }
    if n > cap {
        return Err(Error::capacity(format!(
            "ball has {n} vertices, canonicalization cap is {cap}"
        )));
    }
    let mut colors = vec![1usize; n];
    colors[root] = 0;
    let mut search = Search {
        g,
        n,
        best: None,
        best_labels: Vec::new(),
        autos: Vec::new(),
        prefix: Vec::new(),
    };
    search.run(colors);
    Ok(ClassCode(
        search
            .best
            .expect("search always reaches a leaf")
            .into_boxed_slice(),
    ))
}

const MAX_STORED_AUTOMORPHISMS: usize = 512;

struct Search<'a> {
    g: &'a DirectedMultigraph,
    n: usize,
    best: Option<Vec<u8>>,
    best_labels: Vec<usize>,
    autos: Vec<Vec<usize>>,
    prefix: Vec<usize>,
}

impl Search<'_> {
    fn run(&mut self, mut colors: Vec<usize>) {
        refine(self.g, &mut colors);

        let cell = target_cell(&colors, self.n);
        let Some(cell) = cell else {
            self.leaf(&colors);
            return;
        };

        let mut candidates: Vec<usize> = (0..self.n).filter(|&v| colors[v] == cell).collect();
        candidates.sort_unstable();

        // Orbit partition of the candidates under automorphisms that fix
        // the current prefix. Twin vertices (swappable in place) seed it,
        // which collapses leaf tufts and star cells without any search;
        // discovered automorphisms are folded in incrementally.
        let mut orbits = UnionFind::new(self.n);
        union_twins(self.g, &candidates, &mut orbits);
        let mut folded = 0usize;

        let mut tried: Vec<usize> = Vec::new();
        for v in candidates {
            while folded < self.autos.len() {
                let auto = &self.autos[folded];
                folded += 1;
                if self.prefix.iter().any(|&p| auto[p] != p) {
                    continue;
                }
                for (w, &image) in auto.iter().enumerate() {
                    orbits.union(w, image);
                }
            }
            let root_v = orbits.find(v);
            if tried.iter().any(|&t| orbits.find(t) == root_v) {
                continue;
            }
            tried.push(v);
            let mut split = colors.clone();
            individualize(&mut split, v);
            self.prefix.push(v);
            self.run(split);
            self.prefix.pop();
        }
    }

    fn leaf(&mut self, colors: &[usize]) {
        let code = serialize(self.g, colors);
        match &self.best {
            None => {
                self.best = Some(code);
                self.best_labels = colors.to_vec();
            }
            Some(best) => {
                if code < *best {
                    self.best = Some(code);
                    self.best_labels = colors.to_vec();
                    self.autos.clear();
                } else if code == *best && self.autos.len() < MAX_STORED_AUTOMORPHISMS {
                    // Equal codes mean the two labelings differ by an
                    // automorphism: send v to the vertex the best labeling
                    // puts at the same canonical position.
                    let mut at_label = vec![0usize; self.n];
                    for (u, &l) in self.best_labels.iter().enumerate() {
                        at_label[l] = u;
                    }
                    let auto: Vec<usize> = colors.iter().map(|&l| at_label[l]).collect();
                    if auto.iter().enumerate().any(|(a, &b)| a != b) {
                        self.autos.push(auto);
                    }
                }
            }
        }
    }
}

/// Unions candidates whose transposition is an automorphism: `u` and `v`
/// are twins when swapping them (fixing everything else) preserves every
/// edge with multiplicity. Such swaps fix any prefix, so they are always
/// usable for pruning. Candidates are compared against one representative
/// per twin class found so far.
fn union_twins(g: &DirectedMultigraph, candidates: &[usize], orbits: &mut UnionFind) {
    use std::collections::HashMap;
    if candidates.len() < 2 {
        return;
    }
    let profiles: Vec<HashMap<(usize, bool), usize>> = candidates
        .iter()
        .map(|&v| {
            let mut p = HashMap::new();
            for &e in g.out_edges(v) {
                *p.entry((g.edge(e).1, true)).or_insert(0) += 1;
            }
            for &e in g.in_edges(v) {
                *p.entry((g.edge(e).0, false)).or_insert(0) += 1;
            }
            p
        })
        .collect();
    let mut reps: Vec<usize> = Vec::new(); // indices into candidates
    'cand: for i in 0..candidates.len() {
        for &r in &reps {
            if swap_is_automorphism(candidates[i], candidates[r], &profiles[i], &profiles[r]) {
                orbits.union(candidates[i], candidates[r]);
                continue 'cand;
            }
        }
        reps.push(i);
    }
}

/// Checks that transposing `u` and `v` maps `u`'s incidence profile onto
/// `v`'s exactly (loops swap to loops, cross edges to their transposes).
fn swap_is_automorphism(
    u: usize,
    v: usize,
    pu: &std::collections::HashMap<(usize, bool), usize>,
    pv: &std::collections::HashMap<(usize, bool), usize>,
) -> bool {
    if pu.len() != pv.len() {
        return false;
    }
    pu.iter().all(|(&(w, dir), &count)| {
        let mapped = if w == u {
            (v, dir)
        } else if w == v {
            (u, dir)
        } else {
            (w, dir)
        };
        pv.get(&mapped) == Some(&count)
    })
}

/// First color whose cell has at least two members, if any.
fn target_cell(colors: &[usize], n: usize) -> Option<usize> {
    let mut count = vec![0usize; n];
    for &c in colors {
        count[c] += 1;
    }
    count.iter().position(|&c| c >= 2)
}

fn individualize(colors: &mut [usize], v: usize) {
    let c = colors[v];
    for (w, col) in colors.iter_mut().enumerate() {
        if *col > c || (*col == c && w != v) {
            *col += 1;
        }
    }
}

/// Stable color refinement: vertices are repeatedly regrouped by
/// (color, multiset of out-neighbor colors, multiset of in-neighbor colors)
/// until the partition stops changing. Parallel edges count with
/// multiplicity and a loop shows up on both sides.
fn refine(g: &DirectedMultigraph, colors: &mut Vec<usize>) {
    let n = g.vertex_count();
    loop {
        let mut sigs: Vec<(usize, Vec<usize>, Vec<usize>, usize)> = (0..n)
            .map(|v| {
                let mut out: Vec<usize> = g
                    .out_edges(v)
                    .iter()
                    .map(|&e| colors[g.edge(e).1])
                    .collect();
                let mut inc: Vec<usize> =
                    g.in_edges(v).iter().map(|&e| colors[g.edge(e).0]).collect();
                out.sort_unstable();
                inc.sort_unstable();
                (colors[v], out, inc, v)
            })
            .collect();
        sigs.sort_unstable();

        let mut next = vec![0usize; n];
        let mut color = 0usize;
        for i in 0..n {
            if i > 0
                && (sigs[i].0, &sigs[i].1, &sigs[i].2)
                    != (sigs[i - 1].0, &sigs[i - 1].1, &sigs[i - 1].2)
            {
                color += 1;
            }
            next[sigs[i].3] = color;
        }
        if next == *colors {
            return;
        }
        *colors = next;
    }
}

fn serialize(g: &DirectedMultigraph, labels: &[usize]) -> Vec<u8> {
    let mut edges: Vec<(usize, usize)> = g
        .edges()
        .iter()
        .map(|&(t, h)| (labels[t], labels[h]))
        .collect();
    edges.sort_unstable();

    let mut out = Vec::with_capacity(9 + edges.len() * 8);
    out.push(1u8); // format version
    out.extend_from_slice(&(g.vertex_count() as u32).to_be_bytes());
    out.extend_from_slice(&(edges.len() as u32).to_be_bytes());
    for (t, h) in edges {
        out.extend_from_slice(&(t as u32).to_be_bytes());
        out.extend_from_slice(&(h as u32).to_be_bytes());
    }
    out
}

struct UnionFind {
    parent: Vec<usize>,
}

impl UnionFind {
    fn new(n: usize) -> Self {
        UnionFind {
            parent: (0..n).collect(),
        }
    }

    fn find(&mut self, mut x: usize) -> usize {
        while self.parent[x] != x {
            self.parent[x] = self.parent[self.parent[x]];
            x = self.parent[x];
        }
        x
    }

    fn union(&mut self, a: usize, b: usize) {
        let (ra, rb) = (self.find(a), self.find(b));
        if ra != rb {
            self.parent[ra.max(rb)] = ra.min(rb);
        }
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::graph::build_graph;

    fn code(n: usize, edges: &[(usize, usize)], root: usize) -> ClassCode {
        let g = build_graph(n, edges.to_vec()).unwrap();
        canonical_code_rooted(&g, root, DEFAULT_BALL_CAP).unwrap()
    }

    /// Exhaustive rooted isomorphism over all relabelings that fix the root.
    fn brute_iso(
        n: usize,
        e1: &[(usize, usize)],
        r1: usize,
        e2: &[(usize, usize)],
        r2: usize,
    ) -> bool {
        if e1.len() != e2.len() {
            return false;
        }
        let mut sorted2: Vec<_> = e2.to_vec();
        sorted2.sort_unstable();
        let others: Vec<usize> = (0..n).filter(|&v| v != r1).collect();
        let targets: Vec<usize> = (0..n).filter(|&v| v != r2).collect();
        permutations(&targets).into_iter().any(|perm| {
            let mut map = vec![usize::MAX; n];
            map[r1] = r2;
            for (i, &v) in others.iter().enumerate() {
                map[v] = perm[i];
            }
            let mut mapped: Vec<_> = e1.iter().map(|&(t, h)| (map[t], map[h])).collect();
            mapped.sort_unstable();
            mapped == sorted2
        })
    }

    fn permutations(items: &[usize]) -> Vec<Vec<usize>> {
        if items.is_empty() {
            return vec![vec![]];
        }
        let mut out = Vec::new();
        for i in 0..items.len() {
            let mut rest = items.to_vec();
            let x = rest.remove(i);
            for mut p in permutations(&rest) {
                p.insert(0, x);
                out.push(p);
            }
        }
        out
    }

    #[test]
    fn relabelings_agree() {
        // The same rooted path under two labelings.
        let a = code(3, &[(0, 1), (1, 2)], 0);
        let b = code(3, &[(2, 0), (0, 1)], 2);
        assert_eq!(a, b);
    }

    #[test]
    fn direction_matters() {
        let a = code(3, &[(0, 1), (1, 2)], 1);
        let b = code(3, &[(0, 1), (2, 1)], 1);
        assert_ne!(a, b);
    }

    #[test]
    fn multiplicity_matters() {
        let a = code(2, &[(0, 1)], 0);
        let b = code(2, &[(0, 1), (0, 1)], 0);
        assert_ne!(a, b);
    }

    #[test]
    fn star_leaves_are_symmetric() {
        // 12 identical leaves: feasible only because automorphism pruning
        // collapses the leaf orbit.
        let edges: Vec<_> = (1..13).map(|v| (0usize, v)).collect();
        let a = code(13, &edges, 0);
        let mut rev: Vec<_> = edges.clone();
        rev.reverse();
        let b = code(13, &rev, 0);
        assert_eq!(a, b);
    }

    #[test]
    fn exhaustive_two_vertex_multigraphs() {
        // All rooted directed multigraphs on 2 vertices with at most 2 edges.
        let arcs = [(0usize, 0usize), (0, 1), (1, 0), (1, 1)];
        let mut graphs: Vec<Vec<(usize, usize)>> = vec![vec![]];
        for (i, &a) in arcs.iter().enumerate() {
            graphs.push(vec![a]);
            for &b in &arcs[i..] {
                graphs.push(vec![a, b]);
            }
        }
        for g1 in &graphs {
            for g2 in &graphs {
                let same_code = code(2, g1, 0) == code(2, g2, 0);
                let iso = brute_iso(2, g1, 0, g2, 0);
                assert_eq!(same_code, iso, "g1={g1:?} g2={g2:?}");
            }
        }
    }

    #[test]
    fn code_is_root_sensitive() {
        // Out-star rooted at the hub vs rooted at a leaf.
        let edges = [(0, 1), (0, 2)];
        assert_ne!(code(3, &edges, 0), code(3, &edges, 1));
    }

    #[test]
    fn highly_symmetric_trees_stay_fast() {
        // Uniform 5x4 two-level out-tree: the automorphism group has
        // 5! * (4!)^5 elements, far beyond naive branch enumeration.
        let mut edges = Vec::new();
        let mut next = 1usize;
        let mut level1 = Vec::new();
        for _ in 0..5 {
            edges.push((0, next));
            level1.push(next);
            next += 1;
        }
        for &mid in &level1 {
            for _ in 0..4 {
                edges.push((mid, next));
                next += 1;
            }
        }
        let a = code(next, &edges, 0);
        // Reversing the edge list relabels nothing but permutes discovery
        // order; the code must not care.
        let mut rev = edges.clone();
        rev.reverse();
        let b = code(next, &rev, 0);
        assert_eq!(a, b);

        // 60 identical leaves under one root.
        let star: Vec<_> = (1..=60).map(|v| (0usize, v)).collect();
        let c1 = code(61, &star, 0);
        let mut relabeled: Vec<_> = star.iter().map(|&(t, h)| (t, 61 - h)).collect();
        relabeled.reverse();
        let c2 = code(61, &relabeled, 0);
        assert_eq!(c1, c2);
    }
}
