//! Monte-Carlo experiment harnesses and their report schema.
//!
//! Trials derive per-trial seeds from the master seed by index, run across
//! the rayon pool, and aggregate order-independently, so reports do not
//! depend on the parallelism degree. Wall-clock timings live only in the
//! `meta` field, which is outside the determinism contract.

use std::time::Instant;

use rayon::prelude::*;
use serde::{Deserialize, Serialize};

use super::{azuma_bound, er_limit};
use crate::error::{Error, Result};
use crate::generators::{gen_er_directed, gen_pa, gen_regular_directed, RegularVariant};
use crate::graph::{build_graph, DirectedMultigraph};
use crate::matching::max_matching;
use crate::rewiring::{RewirePlan, RewireVariant};
use crate::seeds::trial_seed;

pub const REPORT_SCHEMA_VERSION: &str = "netcontrol.report.v1";

/// Epsilon grid for concentration tail tables: spans the vacuous-to-sharp
/// regimes of the Azuma bound at desk-scale n.
pub const EPSILON_GRID: [f64; 6] = [0.001, 0.002, 0.005, 0.01, 0.02, 0.05];

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct TrialRecord {
    pub trial: u64,
    pub n: usize,
    pub seed: u64,
    pub matching_size: usize,
    pub m: f64,
    pub n_d: f64,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct BoundRow {
    pub epsilon: f64,
    /// Fraction of trials with |m - mean| > epsilon.
    pub empirical_tail: f64,
    pub azuma_bound: f64,
}

/// Per-size summary of a convergence run.
#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct GroupSummary {
    pub n: usize,
    pub trials: usize,
    pub mean_m: f64,
    pub sd_m: f64,
    pub min_m: f64,
    pub max_m: f64,
    /// Analytic limit value when the model has one.
    pub reference_m: Option<f64>,
    pub abs_err: Option<f64>,
}

/// Timing metadata; varies run to run and is excluded from the
/// reproducibility contract.
#[derive(Debug, Clone, Default, Serialize, Deserialize)]
pub struct ReportMeta {
    pub total_wall_ms: f64,
    /// Wall-clock per trial, indexed like `trials`.
    pub wall_ms_per_trial: Vec<f64>,
}

#[derive(Debug, Clone, Serialize, Deserialize)]
pub struct ExperimentReport {
    pub schema_version: String,
    pub experiment: String,
    pub model: String,
    pub params: serde_json::Value,
    pub master_seed: u64,
    pub trials: Vec<TrialRecord>,
    pub groups: Vec<GroupSummary>,
    pub mean_m: f64,
    pub sd_m: f64,
    pub min_m: f64,
    pub max_m: f64,
    pub bound_table: Option<Vec<BoundRow>>,
    pub meta: ReportMeta,
}

impl ExperimentReport {
    /// One CSV row per trial; columns are frozen by the schema version.
    pub fn write_csv(&self, w: impl std::io::Write) -> Result<()> {
        let mut wtr = csv::Writer::from_writer(w);
        wtr.write_record(["trial", "n", "seed", "matching_size", "m", "n_d"])
            .map_err(csv_err)?;
        for t in &self.trials {
            wtr.write_record([
                t.trial.to_string(),
                t.n.to_string(),
                t.seed.to_string(),
                t.matching_size.to_string(),
                format!("{:.17}", t.m),
                format!("{:.17}", t.n_d),
            ])
            .map_err(csv_err)?;
        }
        wtr.flush()?;
        Ok(())
    }

    pub fn to_json_string(&self) -> Result<String> {
        Ok(serde_json::to_string_pretty(self)?)
    }

    fn summarize(trials: &[TrialRecord]) -> (f64, f64, f64, f64) {
        let k = trials.len() as f64;
        let mean = trials.iter().map(|t| t.m).sum::<f64>() / k;
        let var = if trials.len() < 2 {
            0.0
        } else {
            trials.iter().map(|t| (t.m - mean).powi(2)).sum::<f64>() / (k - 1.0)
        };
        let min = trials.iter().map(|t| t.m).fold(f64::INFINITY, f64::min);
        let max = trials.iter().map(|t| t.m).fold(f64::NEG_INFINITY, f64::max);
        (mean, var.sqrt(), min, max)
    }
}

fn csv_err(e: csv::Error) -> Error {
    Error::Input(format!("csv write failed: {e}"))
}

/// Rewires `g` `trials` times under `variant`, computes the exact matching
/// ratio of every rewire, and tabulates the empirical tails against the
/// Azuma bound on the epsilon grid.
pub fn concentration_experiment(
    g: &DirectedMultigraph,
    variant: RewireVariant,
    trials: usize,
    master_seed: u64,
) -> Result<ExperimentReport> {
    if trials < 2 {
        return Err(Error::input(format!(
            "need at least 2 trials, got {trials}"
        )));
    }
    let n = g.vertex_count();
    if n == 0 {
        return Err(Error::input(
            "matching ratio is undefined on the empty graph",
        ));
    }
    let started = Instant::now();
    let plan = RewirePlan::from_graph(g, variant);
    let (records, wall_ms_per_trial): (Vec<TrialRecord>, Vec<f64>) = (0..trials as u64)
        .into_par_iter()
        .map(|i| {
            let t0 = Instant::now();
            let seed = trial_seed(master_seed, i);
            let sample = plan.sample(seed);
            let size = max_matching(&sample).size();
            let record = TrialRecord {
                trial: i,
                n,
                seed,
                matching_size: size,
                m: size as f64 / n as f64,
                n_d: (n - size) as f64 / n as f64,
            };
            (record, t0.elapsed().as_secs_f64() * 1e3)
        })
        .unzip();

    let (mean, sd, min, max) = ExperimentReport::summarize(&records);
    let degrees = g.total_degrees();
    let bound_table = EPSILON_GRID
        .iter()
        .map(|&eps| {
            let exceed = records.iter().filter(|t| (t.m - mean).abs() > eps).count();
            Ok(BoundRow {
                epsilon: eps,
                empirical_tail: exceed as f64 / trials as f64,
                azuma_bound: azuma_bound(eps, &degrees, variant)?,
            })
        })
        .collect::<Result<Vec<_>>>()?;

    Ok(ExperimentReport {
        schema_version: REPORT_SCHEMA_VERSION.to_string(),
        experiment: "concentration".into(),
        model: format!("rewire-{variant}"),
        params: serde_json::json!({
            "variant": variant,
            "trials": trials,
            "n": n,
            "edges": g.edge_count(),
        }),
        master_seed,
        trials: records,
        groups: Vec::new(),
        mean_m: mean,
        sd_m: sd,
        min_m: min,
        max_m: max,
        bound_table: Some(bound_table),
        meta: ReportMeta {
            total_wall_ms: started.elapsed().as_secs_f64() * 1e3,
            wall_ms_per_trial,
        },
    })
}

/// A generator family usable in convergence experiments.
#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(rename_all = "snake_case", tag = "model")]
pub enum ModelSpec {
    /// Directed Erdős–Rényi with the given mean total degree (2c).
    ErDirected { mean_total_degree: f64 },
    /// Random d-regular digraph.
    Regular { d: usize, variant: RegularVariant },
    /// Preferential attachment with r edges per arrival.
    PreferentialAttachment { r: usize, alpha: f64 },
    /// Edgeless graphs; m is identically 0.
    Empty,
}

impl ModelSpec {
    pub fn generate(&self, n: usize, seed: u64) -> Result<DirectedMultigraph> {
        match self {
            ModelSpec::ErDirected { mean_total_degree } => {
                gen_er_directed(n, *mean_total_degree, seed)
            }
            ModelSpec::Regular { d, variant } => gen_regular_directed(n, *d, *variant, seed),
            ModelSpec::PreferentialAttachment { r, alpha } => gen_pa(n, *r, *alpha, seed),
            ModelSpec::Empty => build_graph(n, Vec::new()),
        }
    }

    pub fn descriptor(&self) -> String {
        match self {
            ModelSpec::ErDirected { mean_total_degree } => format!("er(2c={mean_total_degree})"),
            ModelSpec::Regular { d, variant } => format!("regular(d={d},{variant:?})"),
            ModelSpec::PreferentialAttachment { r, alpha } => format!("pa(r={r},alpha={alpha})"),
            ModelSpec::Empty => "empty".into(),
        }
    }

    /// Analytic limit of E m(G_n), when known in closed form.
    pub fn reference_m(&self) -> Result<Option<f64>> {
        match self {
            ModelSpec::ErDirected { mean_total_degree } => {
                if *mean_total_degree > 0.0 {
                    Ok(Some(er_limit(mean_total_degree / 2.0)?.m_limit))
                } else {
                    Ok(Some(0.0))
                }
            }
            ModelSpec::Empty => Ok(Some(0.0)),
            _ => Ok(None),
        }
    }
}

/// For each size in ascending `n_list`, generates `seeds_per_n` graphs and
/// reports the mean and spread of the exact matching ratio, with the
/// analytic limit attached when the model has one.
pub fn convergence_experiment(
    model: &ModelSpec,
    n_list: &[usize],
    seeds_per_n: usize,
    master_seed: u64,
) -> Result<ExperimentReport> {
    if n_list.is_empty() {
        return Err(Error::input("need at least one graph size"));
    }
    if n_list.windows(2).any(|w| w[0] >= w[1]) {
        return Err(Error::input("graph sizes must be strictly ascending"));
    }
    if n_list[0] == 0 {
        return Err(Error::input("graph sizes must be positive"));
    }
    if seeds_per_n == 0 {
        return Err(Error::input("need at least one seed per size"));
    }
    let started = Instant::now();
    let reference = model.reference_m()?;

    let mut all_trials = Vec::new();
    let mut wall_ms_per_trial = Vec::new();
    let mut groups = Vec::new();
    for (gi, &n) in n_list.iter().enumerate() {
        let group_seed = trial_seed(master_seed, gi as u64);
        let timed: Vec<(TrialRecord, f64)> = (0..seeds_per_n as u64)
            .into_par_iter()
            .map(|i| {
                let t0 = Instant::now();
                let seed = trial_seed(group_seed, i);
                let g = model.generate(n, seed)?;
                let size = max_matching(&g).size();
                let record = TrialRecord {
                    trial: 0, // renumbered below
                    n,
                    seed,
                    matching_size: size,
                    m: size as f64 / n as f64,
                    n_d: (n - size) as f64 / n as f64,
                };
                Ok((record, t0.elapsed().as_secs_f64() * 1e3))
            })
            .collect::<Result<Vec<_>>>()?;
        let (records, walls): (Vec<TrialRecord>, Vec<f64>) = timed.into_iter().unzip();
        wall_ms_per_trial.extend(walls);
        let (mean, sd, min, max) = ExperimentReport::summarize(&records);
        groups.push(GroupSummary {
            n,
            trials: records.len(),
            mean_m: mean,
            sd_m: sd,
            min_m: min,
            max_m: max,
            reference_m: reference,
            abs_err: reference.map(|r| (mean - r).abs()),
        });
        all_trials.extend(records);
    }
    for (i, t) in all_trials.iter_mut().enumerate() {
        t.trial = i as u64;
    }

    let (mean, sd, min, max) = ExperimentReport::summarize(&all_trials);
    Ok(ExperimentReport {
        schema_version: REPORT_SCHEMA_VERSION.to_string(),
        experiment: "convergence".into(),
        model: model.descriptor(),
        params: serde_json::json!({
            "model": model,
            "n_list": n_list,
            "seeds_per_n": seeds_per_n,
        }),
        master_seed,
        trials: all_trials,
        groups,
        mean_m: mean,
        sd_m: sd,
        min_m: min,
        max_m: max,
        bound_table: None,
        meta: ReportMeta {
            total_wall_ms: started.elapsed().as_secs_f64() * 1e3,
            wall_ms_per_trial,
        },
    })
}
