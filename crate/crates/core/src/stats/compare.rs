//! Sampling-based comparison of two of the processes.

use std::collections::HashMap;

use serde::Serialize;

use super::hypothesis::{chi_square_gof, chi_square_two_sample, ks_two_sample, ChiSquareResult, KsResult};
use crate::combinatorics::{enumerate_sorting_networks, enumerate_syt, network_params, staircase, tableau_params, Permutation};
use crate::error::{invalid, Result};
use crate::simulate::{run_trials, Model, TrialRecord};

/// Seed for the second sample, derived so that comparing a model with
/// itself uses independent streams.
pub fn derived_seed(seed: u64) -> u64 {
    // splitmix64 finalizer
    let mut z = seed.wrapping_add(0x9e37_79b9_7f4a_7c15);
    z = (z ^ (z >> 30)).wrapping_mul(0xbf58_476d_1ce4_e5b9);
    z = (z ^ (z >> 27)).wrapping_mul(0x94d0_49bb_1331_11eb);
    z ^ (z >> 31)
}

#[derive(Debug, Clone, Serialize)]
pub struct MarginalTest {
    /// 1-based coordinate.
    pub coordinate: usize,
    #[serde(flatten)]
    pub ks: KsResult,
}

#[derive(Debug, Clone, Serialize)]
pub struct OrderingTest {
    #[serde(flatten)]
    pub chi_square: ChiSquareResult,
    pub pass: bool,
}

/// Means and covariances of one sample, with standard errors of the means.
#[derive(Debug, Clone, Serialize)]
pub struct Moments {
    pub mean: Vec<f64>,
    pub mean_se: Vec<f64>,
    pub covariance: Vec<Vec<f64>>,
}

impl Moments {
    pub fn of(records: &[TrialRecord]) -> Self {
        let d = records.first().map_or(0, |r| r.times.len());
        let m = records.len() as f64;
        let mut mean = vec![0.0; d];
        for r in records {
            for (acc, t) in mean.iter_mut().zip(&r.times) {
                *acc += t;
            }
        }
        mean.iter_mut().for_each(|x| *x /= m);
        let mut covariance = vec![vec![0.0; d]; d];
        for r in records {
            for i in 0..d {
                for j in 0..d {
                    covariance[i][j] += (r.times[i] - mean[i]) * (r.times[j] - mean[j]);
                }
            }
        }
        let denom = (m - 1.0).max(1.0);
        covariance.iter_mut().flatten().for_each(|x| *x /= denom);
        let mean_se = (0..d).map(|i| (covariance[i][i] / m).sqrt()).collect();
        Self { mean, mean_se, covariance }
    }
}

/// Differences of the moment estimates, for inspection only.
#[derive(Debug, Clone, Serialize)]
pub struct MomentTable {
    pub a: Moments,
    pub b: Moments,
    /// `(mean_a - mean_b) / sqrt(se_a^2 + se_b^2)` per coordinate.
    pub mean_z: Vec<f64>,
    pub max_covariance_delta: f64,
}

#[derive(Debug, Clone, Serialize)]
pub struct ComparisonReport {
    pub model_a: Model,
    pub model_b: Model,
    pub n: usize,
    pub trials: u64,
    pub seed_a: u64,
    pub seed_b: u64,
    pub alpha: f64,
    pub marginals: Vec<MarginalTest>,
    /// Absent when either model has no trajectory ordering to compare
    /// (never the case for the three processes, which all have times).
    pub ordering: Option<OrderingTest>,
    pub absorbing: KsResult,
    pub moments: MomentTable,
    pub pass: bool,
}

fn order_counts(records: &[TrialRecord], index: &HashMap<Permutation, usize>) -> Vec<u64> {
    let mut counts = vec![0u64; index.len()];
    for r in records {
        counts[index[&Permutation::ranking(&r.times)]] += 1;
    }
    counts
}

/// Compares two samples of `n-1`-dimensional vectors: KS per coordinate,
/// chi-square on the order permutation, KS on the maximum. The verdict
/// passes iff each of these passes at level `alpha`.
pub fn compare_samples(a: &[TrialRecord], b: &[TrialRecord], alpha: f64) -> Result<(Vec<MarginalTest>, OrderingTest, KsResult, MomentTable)> {
    if a.is_empty() || b.is_empty() {
        return invalid("both samples need trials");
    }
    let d = a[0].times.len();
    if b[0].times.len() != d {
        return invalid("samples have different dimensions");
    }
    let column = |rs: &[TrialRecord], k: usize| rs.iter().map(|r| r.times[k]).collect::<Vec<f64>>();
    let marginals = (0..d)
        .map(|k| Ok(MarginalTest { coordinate: k + 1, ks: ks_two_sample(&column(a, k), &column(b, k), alpha)? }))
        .collect::<Result<Vec<_>>>()?;
    let index: HashMap<Permutation, usize> =
        Permutation::all(d).into_iter().enumerate().map(|(i, p)| (p, i)).collect();
    let chi = chi_square_two_sample(&order_counts(a, &index), &order_counts(b, &index))?;
    let ordering = OrderingTest { pass: chi.pass(alpha), chi_square: chi };
    let absorb = |rs: &[TrialRecord]| rs.iter().map(|r| r.absorb).collect::<Vec<f64>>();
    let absorbing = ks_two_sample(&absorb(a), &absorb(b), alpha)?;
    let (ma, mb) = (Moments::of(a), Moments::of(b));
    let mean_z = (0..d)
        .map(|k| (ma.mean[k] - mb.mean[k]) / (ma.mean_se[k].powi(2) + mb.mean_se[k].powi(2)).sqrt())
        .collect();
    let max_covariance_delta = ma
        .covariance
        .iter()
        .flatten()
        .zip(mb.covariance.iter().flatten())
        .map(|(x, y)| (x - y).abs())
        .fold(0.0, f64::max);
    let moments = MomentTable { a: ma, b: mb, mean_z, max_covariance_delta };
    Ok((marginals, ordering, absorbing, moments))
}

/// Samples `trials` trials of each model and compares them. Model `a` uses
/// `seed`, model `b` uses [`derived_seed`]`(seed)`.
pub fn compare_processes(a: Model, b: Model, n: usize, trials: u64, seed: u64, alpha: f64) -> Result<ComparisonReport> {
    if trials < 2 {
        return invalid("at least two trials are needed");
    }
    let seed_b = derived_seed(seed);
    let ra = run_trials(a, n, trials, seed)?;
    let rb = run_trials(b, n, trials, seed_b)?;
    let (marginals, ordering, absorbing, moments) = compare_samples(&ra, &rb, alpha)?;
    let pass = marginals.iter().all(|m| m.ks.pass) && ordering.pass && absorbing.pass;
    Ok(ComparisonReport {
        model_a: a,
        model_b: b,
        n,
        trials,
        seed_a: seed,
        seed_b,
        alpha,
        marginals,
        ordering: Some(ordering),
        absorbing,
        moments,
        pass,
    })
}

/// Chi-square of sampled trajectory frequencies against `Π deg(j)^{-1}`,
/// for the oriented swap process (networks) or corner growth (tableaux).
pub fn trajectory_gof(model: Model, n: usize, trials: u64, seed: u64) -> Result<ChiSquareResult> {
    let expected: Vec<(String, f64)> = match model {
        Model::Osp => enumerate_sorting_networks(n)?
            .map(|s| {
                let key = crate::simulate::Trajectory::Network(s.clone()).to_string();
                (key, network_params(&s).path_probability())
            })
            .collect(),
        Model::Growth => enumerate_syt(&staircase(n)?)
            .map(|t| {
                let p = tableau_params(&t).map(|b| b.path_probability());
                (crate::simulate::Trajectory::Tableau(t).to_string(), p.unwrap_or(0.0))
            })
            .collect(),
        Model::Dual => return invalid("the dual process records no trajectory"),
    };
    let index: HashMap<&str, usize> = expected.iter().enumerate().map(|(i, (k, _))| (k.as_str(), i)).collect();
    let mut counts = vec![0u64; expected.len()];
    for r in run_trials(model, n, trials, seed)? {
        let key = r.trajectory.to_string();
        let Some(&i) = index.get(key.as_str()) else {
            return invalid(format!("sampled trajectory {key} is not in the enumeration"));
        };
        counts[i] += 1;
    }
    let probs: Vec<f64> = expected.iter().map(|(_, p)| *p).collect();
    chi_square_gof(&counts, &probs)
}
