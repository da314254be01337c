//! Analytic limit values, Azuma–Hoeffding bounds, neighborhood statistics
//! and the Monte-Carlo experiment harnesses.

mod experiments;
mod histogram;
mod limit_estimate;

pub use experiments::{
    concentration_experiment, convergence_experiment, BoundRow, ExperimentReport, GroupSummary,
    ModelSpec, ReportMeta, TrialRecord, EPSILON_GRID, REPORT_SCHEMA_VERSION,
};
pub use histogram::{
    neighborhood_histogram, tv_distance, ugw_reference_histogram, NeighborhoodHistogram,
};
pub use limit_estimate::{estimate_limit_ratio, LimitEstimate};

use serde::{Deserialize, Serialize};

use crate::error::{Error, Result};
use crate::rewiring::RewireVariant;

/// Solution of the Erdős–Rényi limit equation for the directed matching
/// ratio at edge-density parameter 2c.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct LimitSolution {
    pub c: f64,
    /// Smallest root of t = exp(-c exp(-c t)) in (0, 1).
    pub t_c: f64,
    /// 1 - (t_c + e^{-c t_c} + c t_c e^{-c t_c}) / 2.
    pub m_limit: f64,
    /// |t_c - exp(-c exp(-c t_c))| after bisection.
    pub residual: f64,
    /// Every root located by the sign scan, ascending; more than one entry
    /// flags the multi-root regime (large c).
    pub all_roots: Vec<f64>,
}

/// Locates the smallest root of t = exp(-c exp(-c t)) by a sign scan at step
/// 1e-3 over (0, 1) followed by bisection, then evaluates the closed-form
/// limit of the directed matching ratio.
pub fn er_limit(c: f64) -> Result<LimitSolution> {
    if !c.is_finite() || c <= 0.0 {
        return Err(Error::input(format!("c must be positive, got {c}")));
    }
    let f = |t: f64| t - (-c * (-c * t).exp()).exp();
    let mut roots = Vec::new();
    let steps = 1000usize;
    let mut prev_t = 0.0;
    let mut prev_f = f(0.0); // always negative
    for k in 1..=steps {
        let t = k as f64 / steps as f64;
        let ft = f(t);
        if ft == 0.0 {
            roots.push(t);
        } else if prev_f < 0.0 && ft > 0.0 || prev_f > 0.0 && ft < 0.0 {
            roots.push(bisect(&f, prev_t, t));
        }
        prev_t = t;
        prev_f = ft;
    }
    debug_assert!(
        !roots.is_empty(),
        "f(0) < 0 and f(1) > 0 force a sign change"
    );
    let t_c = roots[0];
    let residual = f(t_c).abs();
    let e = (-c * t_c).exp();
    let m_limit = 1.0 - (t_c + e + c * t_c * e) / 2.0;
    Ok(LimitSolution {
        c,
        t_c,
        m_limit,
        residual,
        all_roots: roots,
    })
}

fn bisect(f: &impl Fn(f64) -> f64, mut lo: f64, mut hi: f64) -> f64 {
    let mut flo = f(lo);
    for _ in 0..200 {
        let mid = 0.5 * (lo + hi);
        if mid == lo || mid == hi {
            break;
        }
        let fm = f(mid);
        if fm == 0.0 {
            return mid;
        }
        if (fm < 0.0) == (flo < 0.0) {
            lo = mid;
            flo = fm;
        } else {
            hi = mid;
        }
    }
    0.5 * (lo + hi)
}

/// The Azuma–Hoeffding concentration bound for the matching ratio of a
/// degree-preserving randomization: min(1, 2 exp(-ε²n² / (D Σ d_k²))) with
/// D = 8 when in/out degrees are preserved and D = 32 when only totals are.
pub fn azuma_bound(epsilon: f64, total_degrees: &[usize], variant: RewireVariant) -> Result<f64> {
    if !epsilon.is_finite() || epsilon <= 0.0 {
        return Err(Error::input(format!(
            "epsilon must be positive, got {epsilon}"
        )));
    }
    if total_degrees.is_empty() || total_degrees.iter().all(|&d| d == 0) {
        return Err(Error::input(
            "degree sequence has no positive entry; bound undefined",
        ));
    }
    let divisor = match variant {
        RewireVariant::PreserveInOut => 8.0,
        RewireVariant::PreserveTotal => 32.0,
    };
    let n = total_degrees.len() as f64;
    let sum_sq: f64 = total_degrees.iter().map(|&d| (d * d) as f64).sum();
    let exponent = epsilon * epsilon * n * n / (divisor * sum_sq);
    Ok((2.0 * (-exponent).exp()).min(1.0))
}
