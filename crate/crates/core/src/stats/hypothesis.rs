//! Two-sample Kolmogorov–Smirnov and chi-square tests.

use serde::Serialize;
use statrs::distribution::{ChiSquared, ContinuousCDF};

use crate::error::{invalid, Result};

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct KsResult {
    pub statistic: f64,
    pub threshold: f64,
    pub pass: bool,
}

/// `c(α) = sqrt(-ln(α/2) / 2)`.
pub fn ks_critical_value(alpha: f64) -> f64 {
    (-(alpha / 2.0).ln() / 2.0).sqrt()
}

/// Largest distance between the empirical CDFs of `a` and `b`, compared
/// with `c(α) · sqrt((m + m') / (m m'))`.
pub fn ks_two_sample(a: &[f64], b: &[f64], alpha: f64) -> Result<KsResult> {
    if a.is_empty() || b.is_empty() {
        return invalid("samples must be non-empty");
    }
    if !(alpha > 0.0 && alpha < 1.0) {
        return invalid(format!("level {alpha} is not in (0, 1)"));
    }
    if a.iter().chain(b).any(|x| x.is_nan()) {
        return invalid("samples contain NaN");
    }
    let mut a = a.to_vec();
    let mut b = b.to_vec();
    a.sort_by(f64::total_cmp);
    b.sort_by(f64::total_cmp);
    let (m, mm) = (a.len() as f64, b.len() as f64);
    let (mut i, mut j) = (0, 0);
    let mut d: f64 = 0.0;
    while i < a.len() && j < b.len() {
        // step past every copy of the smaller value in both samples
        let x = a[i].min(b[j]);
        while i < a.len() && a[i] <= x {
            i += 1;
        }
        while j < b.len() && b[j] <= x {
            j += 1;
        }
        d = d.max((i as f64 / m - j as f64 / mm).abs());
    }
    let threshold = ks_critical_value(alpha) * ((m + mm) / (m * mm)).sqrt();
    Ok(KsResult { statistic: d, threshold, pass: d <= threshold })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ChiSquareResult {
    pub statistic: f64,
    pub dof: usize,
    pub p_value: f64,
    /// Bins left after pooling sparse ones.
    pub bins: usize,
}

impl ChiSquareResult {
    pub fn pass(&self, alpha: f64) -> bool {
        self.p_value > alpha
    }
}

fn p_value(statistic: f64, dof: usize) -> f64 {
    if dof == 0 {
        return 1.0;
    }
    ChiSquared::new(dof as f64).map_or(f64::NAN, |c| c.sf(statistic))
}

/// Goodness of fit of counts to probabilities. Bins whose expected count is
/// below 5 are pooled into one.
pub fn chi_square_gof(observed: &[u64], probs: &[f64]) -> Result<ChiSquareResult> {
    if observed.len() != probs.len() || observed.is_empty() {
        return invalid("observed counts and probabilities must have the same non-zero length");
    }
    if probs.iter().any(|&p| !(p >= 0.0)) {
        return invalid("probabilities must be non-negative");
    }
    let total: u64 = observed.iter().sum();
    let mass: f64 = probs.iter().sum();
    if total == 0 || mass <= 0.0 {
        return invalid("no observations or zero total probability");
    }
    let scale = total as f64 / mass;
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut pool_o, mut pool_e) = (0.0, 0.0);
    for (&o, &p) in observed.iter().zip(probs) {
        let e = p * scale;
        if e < 5.0 {
            pool_o += o as f64;
            pool_e += e;
        } else {
            bins.push((o as f64, e));
        }
    }
    if pool_e > 0.0 || pool_o > 0.0 {
        bins.push((pool_o, pool_e));
    }
    let statistic = bins
        .iter()
        .map(|&(o, e)| if e > 0.0 { (o - e).powi(2) / e } else if o > 0.0 { f64::INFINITY } else { 0.0 })
        .sum();
    let dof = bins.len().saturating_sub(1);
    Ok(ChiSquareResult { statistic, dof, p_value: p_value(statistic, dof), bins: bins.len() })
}

/// Homogeneity of two count vectors over the same bins. Bins with fewer
/// than 10 observations in total are pooled.
pub fn chi_square_two_sample(a: &[u64], b: &[u64]) -> Result<ChiSquareResult> {
    if a.len() != b.len() || a.is_empty() {
        return invalid("count vectors must have the same non-zero length");
    }
    let (na, nb): (u64, u64) = (a.iter().sum(), b.iter().sum());
    if na == 0 || nb == 0 {
        return invalid("both samples need observations");
    }
    let mut bins: Vec<(f64, f64)> = Vec::new();
    let (mut pa, mut pb) = (0.0, 0.0);
    for (&x, &y) in a.iter().zip(b) {
        if x + y < 10 {
            pa += x as f64;
            pb += y as f64;
        } else {
            bins.push((x as f64, y as f64));
        }
    }
    if pa + pb > 0.0 {
        bins.push((pa, pb));
    }
    let (ra, rb) = ((nb as f64 / na as f64).sqrt(), (na as f64 / nb as f64).sqrt());
    let statistic = bins.iter().map(|&(x, y)| (ra * x - rb * y).powi(2) / (x + y)).sum();
    let dof = bins.len().saturating_sub(1);
    Ok(ChiSquareResult { statistic, dof, p_value: p_value(statistic, dof), bins: bins.len() })
}

#[cfg(test)]
mod tests {
    use super::*;

    /// Direct sup over all sample points, quadratic.
    fn ks_oracle(a: &[f64], b: &[f64]) -> f64 {
        let cdf = |s: &[f64], x: f64| s.iter().filter(|&&v| v <= x).count() as f64 / s.len() as f64;
        a.iter().chain(b).map(|&x| (cdf(a, x) - cdf(b, x)).abs()).fold(0.0, f64::max)
    }

    #[test]
    fn ks_examples() {
        let r = ks_two_sample(&[0.0, 1.0], &[0.5, 1.5], 0.05).unwrap();
        assert_eq!(r.statistic, 0.5);
        let same = [0.3, 0.1, 0.7, 0.7];
        let r = ks_two_sample(&same, &same, 0.01).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert!(r.pass);
        assert!(ks_two_sample(&[], &[1.0], 0.01).is_err());
        assert!((ks_critical_value(0.05) - 1.3581).abs() < 1e-4);
    }

    #[test]
    fn ks_matches_oracle_with_ties() {
        let mut rng = crate::simulate::RngStream::new(3, 0);
        for _ in 0..200 {
            let la = 1 + rng.below(30);
            let lb = 1 + rng.below(30);
            let a: Vec<f64> = (0..la).map(|_| rng.below(8) as f64).collect();
            let b: Vec<f64> = (0..lb).map(|_| rng.below(8) as f64).collect();
            let d = ks_two_sample(&a, &b, 0.01).unwrap().statistic;
            assert!((d - ks_oracle(&a, &b)).abs() < 1e-15);
        }
    }

    #[test]
    fn ks_detects_shift() {
        let a: Vec<f64> = (0..2000).map(|i| i as f64 / 2000.0).collect();
        let b: Vec<f64> = a.iter().map(|x| x + 0.1).collect();
        assert!(!ks_two_sample(&a, &b, 0.01).unwrap().pass);
    }

    #[test]
    fn gof_exact_counts() {
        let r = chi_square_gof(&[25, 25, 50], &[0.25, 0.25, 0.5]).unwrap();
        assert_eq!(r.statistic, 0.0);
        assert_eq!(r.dof, 2);
        assert!((r.p_value - 1.0).abs() < 1e-12);
        // (5^2 + 5^2) / 25 = 2 on one degree of freedom
        let r = chi_square_gof(&[30, 20], &[0.5, 0.5]).unwrap();
        assert!((r.statistic - 2.0).abs() < 1e-12);
        assert!((r.p_value - 0.157_299_207).abs() < 1e-6);
    }

    #[test]
    fn gof_pools_sparse_bins() {
        let r = chi_square_gof(&[90, 5, 3, 2], &[0.9, 0.04, 0.03, 0.03]).unwrap();
        assert_eq!(r.bins, 2);
    }

    #[test]
    fn two_sample_homogeneity() {
        let r = chi_square_two_sample(&[100, 200, 300], &[200, 400, 600]).unwrap();
        assert!(r.statistic.abs() < 1e-12);
        assert_eq!(r.dof, 2);
        let r = chi_square_two_sample(&[300, 300], &[100, 500]).unwrap();
        assert!(r.p_value < 1e-10);
    }
}
