//! Empirical distributions of rooted-neighborhood isomorphism classes, the
//! finite-radius view of local weak convergence.

use std::collections::BTreeMap;

use rand::Rng;
use rand::SeedableRng;
use rand_chacha::ChaCha8Rng;
use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::generators::{gen_ugw_truncated, OffspringDistribution};
use crate::graph::{canonical_code, extract_ball, BallMode, ClassCode, DirectedMultigraph};
use crate::seeds::trial_seed;

/// Distribution of canonical ball codes over sampled roots. Balls that
/// exceed the canonicalization cap are tallied in the `overflow` bucket,
/// which participates in totals and distances.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct NeighborhoodHistogram {
    pub radius: usize,
    pub mode: BallMode,
    pub counts: BTreeMap<ClassCode, u64>,
    pub samples: u64,
    pub overflow: u64,
}

impl NeighborhoodHistogram {
    pub fn prob(&self, code: &ClassCode) -> f64 {
        *self.counts.get(code).unwrap_or(&0) as f64 / self.samples as f64
    }

    pub fn overflow_prob(&self) -> f64 {
        self.overflow as f64 / self.samples as f64
    }

    pub fn class_count(&self) -> usize {
        self.counts.len()
    }

    /// Probabilities sum to 1 (overflow bucket included) by construction;
    /// exposed for report validation.
    pub fn total_mass(&self) -> f64 {
        (self.counts.values().sum::<u64>() + self.overflow) as f64 / self.samples as f64
    }
}

/// Empirical distribution of the canonical code of the rooted ball
/// `B(o, r)` over uniformly random roots `o`; `sample_size >= n` switches to
/// exhaustive enumeration with every vertex taken once.
pub fn neighborhood_histogram(
    g: &DirectedMultigraph,
    r: usize,
    mode: BallMode,
    sample_size: usize,
    seed: u64,
    cap: usize,
) -> Result<NeighborhoodHistogram> {
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input("cannot sample a root of the empty graph"));
    }
    if sample_size == 0 {
        return Err(Error::input("need at least one sample"));
    }
    let mut hist = NeighborhoodHistogram {
        radius: r,
        mode,
        counts: BTreeMap::new(),
        samples: 0,
        overflow: 0,
    };
    let tally = |root: usize, hist: &mut NeighborhoodHistogram| -> Result<()> {
        let ball = extract_ball(g, root, r, mode)?;
        hist.samples += 1;
        match canonical_code(&ball, cap) {
            Ok(code) => *hist.counts.entry(code).or_insert(0) += 1,
            Err(crate::error::Error::Capacity(_)) => hist.overflow += 1,
            Err(other) => return Err(other),
        }
        Ok(())
    };
    if sample_size >= n {
        for v in 0..n {
            tally(v, &mut hist)?;
        }
    } else {
        let mut rng = ChaCha8Rng::seed_from_u64(seed);
        for _ in 0..sample_size {
            let v = rng.random_range(0..n);
            tally(v, &mut hist)?;
        }
    }
    Ok(hist)
}

/// Reference histogram for a unimodular Galton–Watson limit: canonical codes
/// of `samples` independent trees truncated at depth `r`. On trees the minus
/// and full boundary conventions coincide, so the histogram is tagged with
/// whatever `mode` the finite-graph side uses.
pub fn ugw_reference_histogram(
    off: &OffspringDistribution,
    r: usize,
    directed: bool,
    mode: BallMode,
    samples: usize,
    seed: u64,
    cap: usize,
) -> Result<NeighborhoodHistogram> {
    if samples == 0 {
        return Err(Error::input("need at least one sample"));
    }
    let mut hist = NeighborhoodHistogram {
        radius: r,
        mode,
        counts: BTreeMap::new(),
        samples: 0,
        overflow: 0,
    };
    for i in 0..samples {
        let ball = gen_ugw_truncated(off, r, directed, trial_seed(seed, i as u64))?;
        hist.samples += 1;
        match canonical_code(&ball, cap) {
            Ok(code) => *hist.counts.entry(code).or_insert(0) += 1,
            Err(crate::error::Error::Capacity(_)) => hist.overflow += 1,
            Err(other) => return Err(other),
        }
    }
    Ok(hist)
}

/// Total-variation distance between two histograms of equal radius and mode:
/// half the L1 distance over the union of codes, overflow included.
pub fn tv_distance(a: &NeighborhoodHistogram, b: &NeighborhoodHistogram) -> Result<f64> {
    if a.radius != b.radius {
        return Err(Error::input(format!(
            "radius mismatch: {} vs {}",
            a.radius, b.radius
        )));
    }
    if a.mode != b.mode {
        return Err(Error::input("ball mode mismatch"));
    }
    let mut l1 = 0.0;
    for (code, &ca) in &a.counts {
        let pa = ca as f64 / a.samples as f64;
        let pb = b.prob(code);
        l1 += (pa - pb).abs();
    }
    for (code, &cb) in &b.counts {
        if !a.counts.contains_key(code) {
            l1 += cb as f64 / b.samples as f64;
        }
    }
    l1 += (a.overflow_prob() - b.overflow_prob()).abs();
    Ok(l1 / 2.0)
}
