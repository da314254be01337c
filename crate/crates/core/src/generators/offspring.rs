//! Offspring distributions and truncated unimodular Galton–Watson trees.

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;

use crate::error::{Error, Result};
use crate::graph::{build_graph, BallMode, RootedBall};

/// Poisson tails below this mass are truncated away (and the rest
/// renormalized); far below Monte-Carlo noise.
const TAIL_EPS: f64 = 1e-12;

/// Safety cap on sampled tree sizes; supercritical offspring laws at large
/// depth can explode.
const UGW_MAX_VERTICES: usize = 1 << 22;

/// A probability mass function on {0, 1, 2, ...} with finite support.
#[derive(Debug, Clone, PartialEq)]
pub struct OffspringDistribution {
    pmf: Vec<f64>,
    mean: f64,
}

impl OffspringDistribution {
    pub fn from_pmf(mut pmf: Vec<f64>) -> Result<Self> {
        while pmf.len() > 1 && pmf.last() == Some(&0.0) {
            pmf.pop();
        }
        if pmf.is_empty() {
            return Err(Error::input("empty probability mass function"));
        }
        if pmf.iter().any(|&p| !p.is_finite() || p < 0.0) {
            return Err(Error::input(
                "probability masses must be finite and nonnegative",
            ));
        }
        let sum: f64 = pmf.iter().sum();
        if (sum - 1.0).abs() > 1e-12 {
            return Err(Error::input(format!(
                "masses sum to {sum}, expected 1 within 1e-12"
            )));
        }
        for p in &mut pmf {
            *p /= sum;
        }
        let mean = pmf.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
        Ok(OffspringDistribution { pmf, mean })
    }

    /// Point mass at `k`.
    pub fn constant(k: usize) -> Self {
        let mut pmf = vec![0.0; k + 1];
        pmf[k] = 1.0;
        OffspringDistribution {
            pmf,
            mean: k as f64,
        }
    }

    /// Poisson(λ), truncated where the tail mass drops below 1e-12 and
    /// renormalized.
    pub fn poisson(lambda: f64) -> Result<Self> {
        if !lambda.is_finite() || lambda < 0.0 {
            return Err(Error::input(format!(
                "lambda must be nonnegative, got {lambda}"
            )));
        }
        if lambda > 500.0 {
            return Err(Error::capacity(format!(
                "poisson lambda {lambda} too large for linear-space pmf"
            )));
        }
        let mut pmf = vec![(-lambda).exp()];
        let mut cumulative = pmf[0];
        let mut k = 0usize;
        while 1.0 - cumulative > TAIL_EPS {
            k += 1;
            let next = pmf[k - 1] * lambda / k as f64;
            pmf.push(next);
            cumulative += next;
        }
        let sum: f64 = pmf.iter().sum();
        for p in &mut pmf {
            *p /= sum;
        }
        let mean = pmf.iter().enumerate().map(|(j, &p)| j as f64 * p).sum();
        Ok(OffspringDistribution { pmf, mean })
    }

    pub fn pmf(&self) -> &[f64] {
        &self.pmf
    }

    pub fn mean(&self) -> f64 {
        self.mean
    }

    /// The size-biased law (k+1) P(ξ = k+1) / E ξ, governing offspring away
    /// from the root in a unimodular Galton–Watson tree.
    pub fn size_biased(&self) -> Result<Self> {
        if self.mean <= 0.0 {
            return Err(Error::input("size-biased law requires positive mean"));
        }
        let pmf: Vec<f64> = (0..self.pmf.len().saturating_sub(1))
            .map(|k| (k + 1) as f64 * self.pmf[k + 1] / self.mean)
            .collect();
        let sum: f64 = pmf.iter().sum();
        let pmf: Vec<f64> = pmf.into_iter().map(|p| p / sum).collect();
        let mean = pmf.iter().enumerate().map(|(k, &p)| k as f64 * p).sum();
        Ok(OffspringDistribution { pmf, mean })
    }

    fn sample(&self, rng: &mut ChaCha8Rng) -> usize {
        let u: f64 = rng.random();
        let mut acc = 0.0;
        for (k, &p) in self.pmf.iter().enumerate() {
            acc += p;
            if u < acc {
                return k;
            }
        }
        self.pmf.len() - 1
    }
}

/// Samples a unimodular Galton–Watson tree truncated at depth `depth`: the
/// root's child count follows `off`, deeper vertices follow the size-biased
/// law, and vertices at the truncation depth get no children. With
/// `directed` each edge is oriented by a fair coin; otherwise edges are
/// stored parent-to-child and callers should treat them as undirected.
pub fn gen_ugw_truncated(
    off: &OffspringDistribution,
    depth: usize,
    directed: bool,
    seed: u64,
) -> Result<RootedBall> {
    let mut rng = ChaCha8Rng::seed_from_u64(seed);
    let mut dist = vec![0usize];
    let mut edges: Vec<(usize, usize)> = Vec::new();
    // Size-biased law built lazily: it only exists (mean > 0) when some
    // vertex actually has children.
    let mut size_biased: Option<OffspringDistribution> = None;

    let mut frontier = 0usize;
    while frontier < dist.len() {
        let v = frontier;
        frontier += 1;
        let d = dist[v];
        if d == depth {
            continue;
        }
        let children = if v == 0 {
            off.sample(&mut rng)
        } else {
            size_biased
                .as_ref()
                .expect("built when the root has children")
                .sample(&mut rng)
        };
        if children > 0 && size_biased.is_none() {
            size_biased = Some(off.size_biased()?);
        }
        for _ in 0..children {
            let child = dist.len();
            if child >= UGW_MAX_VERTICES {
                return Err(Error::capacity(format!(
                    "sampled tree exceeded {UGW_MAX_VERTICES} vertices"
                )));
            }
            dist.push(d + 1);
            if directed && rng.random::<bool>() {
                edges.push((child, v));
            } else {
                edges.push((v, child));
            }
        }
    }

    let graph = build_graph(dist.len(), edges).expect("tree ids are dense");
    let original_ids = (0..graph.vertex_count()).collect();
    Ok(RootedBall {
        graph,
        radius: depth,
        mode: BallMode::Full,
        dist,
        original_ids,
    })
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn constant_two_gives_unary_paths() {
        // Size-biased law of ξ ≡ 2 is ξ ≡ 1: the root has two children and
        // everything below is a path, so the depth-R tree has 1 + 2R
        // vertices.
        for depth in 0..6 {
            for seed in 0..5 {
                let off = OffspringDistribution::constant(2);
                let ball = gen_ugw_truncated(&off, depth, false, seed).unwrap();
                assert_eq!(ball.graph.vertex_count(), 1 + 2 * depth);
            }
        }
    }

    #[test]
    fn constant_zero_is_single_vertex() {
        let off = OffspringDistribution::constant(0);
        let ball = gen_ugw_truncated(&off, 5, true, 0).unwrap();
        assert_eq!(ball.graph.vertex_count(), 1);
        assert_eq!(ball.graph.edge_count(), 0);
    }

    #[test]
    fn poisson_is_its_own_size_biased_law() {
        // (k+1) e^{-λ} λ^{k+1} / (k+1)! / λ = e^{-λ} λ^k / k!.
        for lambda in [0.5, 1.0, 2.0, 4.0] {
            let p = OffspringDistribution::poisson(lambda).unwrap();
            let sb = p.size_biased().unwrap();
            for (k, &mass) in sb.pmf().iter().enumerate() {
                assert!(
                    (mass - p.pmf()[k]).abs() < 1e-9,
                    "lambda {lambda}, k {k}: {mass} vs {}",
                    p.pmf()[k]
                );
            }
        }
    }

    #[test]
    fn poisson_empirical_child_counts() {
        // Depth-1 trees expose the root law directly.
        let off = OffspringDistribution::poisson(1.5).unwrap();
        let samples = 20_000;
        let mut counts = vec![0usize; off.pmf().len() + 1];
        for seed in 0..samples {
            let ball = gen_ugw_truncated(&off, 1, false, seed).unwrap();
            let children = (ball.graph.vertex_count() - 1).min(counts.len() - 1);
            counts[children] += 1;
        }
        for (k, &count) in counts.iter().enumerate().take(6) {
            let emp = count as f64 / samples as f64;
            let want = off.pmf()[k];
            assert!(
                (emp - want).abs() < 0.02,
                "k = {k}: empirical {emp}, pmf {want}"
            );
        }
    }

    #[test]
    fn bad_pmfs_rejected() {
        assert!(OffspringDistribution::from_pmf(vec![]).is_err());
        assert!(OffspringDistribution::from_pmf(vec![0.5, 0.4]).is_err());
        assert!(OffspringDistribution::from_pmf(vec![-0.1, 1.1]).is_err());
        assert!(OffspringDistribution::poisson(-1.0).is_err());
        assert!(OffspringDistribution::constant(0).size_biased().is_err());
    }

    #[test]
    fn dist_tracks_depth() {
        let off = OffspringDistribution::poisson(2.0).unwrap();
        let ball = gen_ugw_truncated(&off, 3, true, 11).unwrap();
        assert!(ball.dist.iter().all(|&d| d <= 3));
        for &(t, h) in ball.graph.edges() {
            let (dt, dh) = (ball.dist[t], ball.dist[h]);
            assert_eq!(dt.abs_diff(dh), 1, "tree edges join adjacent levels");
        }
    }
}
