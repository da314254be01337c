//! Seeded samplers for the network models: directed Erdős–Rényi, the
//! configuration model conditioned on in/out or total degrees, random
//! regular digraphs, preferential attachment, and truncated unimodular
//! Galton–Watson trees.
//!
//! Every generator is a pure function of its parameters and a 64-bit seed.

mod offspring;

pub use offspring::{gen_ugw_truncated, OffspringDistribution};

use rand::seq::SliceRandom;
use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::graph::{build_graph, DirectedMultigraph};

/// Per-vertex degree data. The in/out variant prescribes both directions
/// (`out_deg[v]` tails, `in_deg[v]` heads); the total variant prescribes only
/// the sum.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "variant")]
pub enum DegreeSequence {
    InOut {
        out_deg: Vec<usize>,
        in_deg: Vec<usize>,
    },
    Total {
        deg: Vec<usize>,
    },
}

impl DegreeSequence {
    pub fn in_out(out_deg: Vec<usize>, in_deg: Vec<usize>) -> Result<Self> {
        if out_deg.len() != in_deg.len() {
            return Err(Error::input(format!(
                "out/in degree arrays have different lengths: {} vs {}",
                out_deg.len(),
                in_deg.len()
            )));
        }
        let (so, si) = (out_deg.iter().sum::<usize>(), in_deg.iter().sum::<usize>());
        if so != si {
            return Err(Error::input(format!(
                "out-degree sum {so} does not match in-degree sum {si}"
            )));
        }
        Ok(DegreeSequence::InOut { out_deg, in_deg })
    }

    pub fn total(deg: Vec<usize>) -> Self {
        DegreeSequence::Total { deg }
    }

    pub fn len(&self) -> usize {
        match self {
            DegreeSequence::InOut { out_deg, .. } => out_deg.len(),
            DegreeSequence::Total { deg } => deg.len(),
        }
    }

    pub fn is_empty(&self) -> bool {
        self.len() == 0
    }

    pub fn total_degrees(&self) -> Vec<usize> {
        match self {
            DegreeSequence::InOut { out_deg, in_deg } => {
                out_deg.iter().zip(in_deg).map(|(o, i)| o + i).collect()
            }
            DegreeSequence::Total { deg } => deg.clone(),
        }
    }

    /// Samples the matching configuration model for this variant.
    pub fn sample(&self, seed: u64) -> Result<DirectedMultigraph> {
        match self {
            DegreeSequence::InOut { out_deg, in_deg } => gen_config_inout(out_deg, in_deg, seed),
            DegreeSequence::Total { deg } => Ok(gen_config_total(deg, seed)),
        }
    }
}

/// Directed Erdős–Rényi graph: each unordered vertex pair is kept
/// independently with probability `mean_total_degree / n` and each kept edge
/// is oriented by a fair coin. Pairs are enumerated with geometric skips, so
/// the cost is proportional to the number of edges.
pub fn gen_er_directed(n: usize, mean_total_degree: f64, seed: u64) -> Result<DirectedMultigraph> {
    if n == 0 {
        return Err(Error::input("need at least one vertex"));
    }
    if !mean_total_degree.is_finite() || mean_total_degree < 0.0 {
        return Err(Error::input(format!(
            "mean total degree {mean_total_degree} is negative"
        )));
    }
    let p = mean_total_degree / n as f64;
    if p > 1.0 {
        return Err(Error::input(format!(
            "edge probability {p} exceeds 1 (mean total degree {mean_total_degree}, n = {n})"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let total_pairs = (n as u64) * (n as u64 - 1) / 2;
    let mut edges = Vec::new();

    let emit = |pair: u64, rng: &mut ChaCha8Rng, edges: &mut Vec<(usize, usize)>| {
        let (i, j) = pair_from_index(n as u64, pair);
        if rng.random::<bool>() {
            edges.push((i as usize, j as usize));
        } else {
            edges.push((j as usize, i as usize));
        }
    };

    if p >= 1.0 {
        for pair in 0..total_pairs {
            emit(pair, &mut rng, &mut edges);
        }
    } else if p > 0.0 {
        let log_q = (1.0 - p).ln();
        let mut next: u64 = 0;
        loop {
            let u: f64 = rng.random();
            let skip = (1.0 - u).ln() / log_q;
            if skip >= (total_pairs - next) as f64 {
                break;
            }
            next += skip as u64;
            emit(next, &mut rng, &mut edges);
            next += 1;
            if next >= total_pairs {
                break;
            }
        }
    }
    build_graph(n, edges)
}

/// Inverse of the row-major enumeration of pairs (i, j), i < j.
fn pair_from_index(n: u64, t: u64) -> (u64, u64) {
    // Row i starts at offset S(i) = i*(2n - i - 1)/2.
    let offset = |i: u64| i * (2 * n - i - 1) / 2;
    let mut i = {
        let nf = n as f64;
        let tf = t as f64;
        let guess = (2.0 * nf - 1.0 - ((2.0 * nf - 1.0).powi(2) - 8.0 * tf).max(0.0).sqrt()) / 2.0;
        (guess.max(0.0) as u64).min(n - 2)
    };
    while i < n - 2 && offset(i + 1) <= t {
        i += 1;
    }
    while offset(i) > t {
        i -= 1;
    }
    let j = i + 1 + (t - offset(i));
    (i, j)
}

/// Configuration model conditioned on in- and out-degrees: a uniform perfect
/// matching of tail half-edges to head half-edges, realized by pairing the
/// tails in order with a seeded shuffle of the heads. Multi-edges and loops
/// are kept.
pub fn gen_config_inout(
    out_deg: &[usize],
    in_deg: &[usize],
    seed: u64,
) -> Result<DirectedMultigraph> {
    if out_deg.len() != in_deg.len() {
        return Err(Error::input("out/in degree arrays have different lengths"));
    }
    let (so, si) = (out_deg.iter().sum::<usize>(), in_deg.iter().sum::<usize>());
    if so != si {
        return Err(Error::input(format!(
            "out-degree sum {so} does not match in-degree sum {si}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let tails = owners(out_deg);
    let mut heads = owners(in_deg);
    heads.shuffle(&mut rng);
    let edges = tails.into_iter().zip(heads).collect();
    build_graph(out_deg.len(), edges)
}

/// Configuration model conditioned on total degrees: all half-edges are
/// split uniformly into a tail set of size ⌊|E|/2⌋ and a head set, then
/// matched uniformly. If the number of half-edges is odd, one uniformly
/// random half-edge is discarded first.
pub fn gen_config_total(deg: &[usize], seed: u64) -> DirectedMultigraph {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut half = owners(deg);
    if half.len() % 2 == 1 {
        let drop = rng.random_range(0..half.len());
        half.swap_remove(drop);
    }
    half.shuffle(&mut rng);
    let m = half.len() / 2;
    let edges = half[..m]
        .iter()
        .copied()
        .zip(half[m..].iter().copied())
        .collect();
    build_graph(deg.len(), edges).expect("owners are valid vertex ids")
}

/// One entry per half-edge, carrying the owning vertex, in vertex order.
fn owners(deg: &[usize]) -> Vec<usize> {
    let mut out = Vec::with_capacity(deg.iter().sum());
    for (v, &d) in deg.iter().enumerate() {
        out.extend(std::iter::repeat_n(v, d));
    }
    out
}

/// How a random `d`-regular digraph is produced.
#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize, Deserialize)]
#[serde(rename_all = "snake_case")]
pub enum RegularVariant {
    /// Every vertex has in-degree and out-degree exactly `d`.
    ExactInOut,
    /// Undirected `d`-regular configuration graph with each edge oriented by
    /// a fair coin.
    Oriented,
}

pub fn gen_regular_directed(
    n: usize,
    d: usize,
    variant: RegularVariant,
    seed: u64,
) -> Result<DirectedMultigraph> {
    match variant {
        RegularVariant::ExactInOut => gen_config_inout(&vec![d; n], &vec![d; n], seed),
        RegularVariant::Oriented => {
            if !(n * d).is_multiple_of(2) {
                return Err(Error::input(format!(
                    "n*d = {} is odd; an undirected {d}-regular graph on {n} vertices does not exist",
                    n * d
                )));
            }
            let mut rng = ChaCha8Rng::seed_from_u64(seed);
            let mut half = owners(&vec![d; n]);
            half.shuffle(&mut rng);
            let mut edges = Vec::with_capacity(half.len() / 2);
            for pair in half.chunks_exact(2) {
                if rng.random::<bool>() {
                    edges.push((pair[0], pair[1]));
                } else {
                    edges.push((pair[1], pair[0]));
                }
            }
            build_graph(n, edges)
        }
    }
}

/// Preferential attachment digraph: growth from a single vertex; each later
/// vertex `t` sends `r` edges whose heads are chosen independently, uniform
/// with probability `alpha` and proportional to the total degree in the
/// graph before `t` arrived otherwise. When all prior degrees are zero (the
/// very first step) the degree-proportional branch falls back to a uniform
/// choice.
pub fn gen_pa(n: usize, r: usize, alpha: f64, seed: u64) -> Result<DirectedMultigraph> {
    if n == 0 {
        return Err(Error::input("need at least one vertex"));
    }
    if r == 0 {
        return Err(Error::input("each new vertex must send at least one edge"));
    }
    if !(0.0..1.0).contains(&alpha) {
        return Err(Error::input(format!(
            "alpha must lie in [0, 1), got {alpha}"
        )));
    }
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut edges: Vec<(usize, usize)> = Vec::with_capacity(r * n.saturating_sub(1));
    // One entry per unit of total degree; sampling an entry uniformly is a
    // degree-proportional draw. Entries for vertex t's edges are appended
    // only after all r heads are chosen, keeping the degrees frozen at the
    // pre-arrival graph.
    let mut degree_units: Vec<usize> = Vec::with_capacity(2 * r * n.saturating_sub(1));
    for t in 1..n {
        let mut heads = Vec::with_capacity(r);
        for _ in 0..r {
            let u: f64 = rng.random();
            let head = if u < alpha || degree_units.is_empty() {
                rng.random_range(0..t)
            } else {
                degree_units[rng.random_range(0..degree_units.len())]
            };
            heads.push(head);
        }
        for &h in &heads {
            edges.push((t, h));
            degree_units.push(h);
        }
        degree_units.extend(std::iter::repeat_n(t, r));
    }
    build_graph(n, edges)
}
