//! Joint densities of `U_n` and `V_n` as mixtures over trajectories.

use std::collections::BTreeMap;
use std::fmt;
use std::str::FromStr;

use num_complex::Complex64;
use serde::Serialize;

use super::hypoexp::hypoexp_density;
use crate::combinatorics::{ParamBundle, Permutation};
use crate::error::{invalid, Error, Result};
use crate::symbolic::genfun::{fold_bundles, Side};

/// Largest order with an exact density.
pub const MAX_DENSITY_N: usize = 5;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Hash, Serialize)]
pub enum DensityModel {
    /// Last-swap times of the oriented swap process (mixture over sorting networks).
    U,
    /// Corner-growth times (mixture over staircase tableaux).
    V,
}

impl DensityModel {
    fn side(self) -> Side {
        match self {
            DensityModel::U => Side::Networks,
            DensityModel::V => Side::Tableaux,
        }
    }
}

impl FromStr for DensityModel {
    type Err = Error;

    fn from_str(s: &str) -> Result<Self> {
        match s.to_ascii_lowercase().as_str() {
            "u" | "osp" => Ok(DensityModel::U),
            "v" | "growth" => Ok(DensityModel::V),
            other => invalid(format!("unknown density model {other:?} (expected u or v)")),
        }
    }
}

impl fmt::Display for DensityModel {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        f.write_str(match self {
            DensityModel::U => "u",
            DensityModel::V => "v",
        })
    }
}

/// One mixture component: trajectories sharing the same order and block
/// rates, with their probabilities summed.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DensityTerm {
    pub weight: f64,
    /// `order.inverse()`: `rank_to_coord[k]` is the 1-based coordinate
    /// completed `k+1`-th.
    pub rank_to_coord: Vec<usize>,
    /// Rates of the exponential waits in each block.
    pub blocks: Vec<Vec<f64>>,
}

#[derive(Debug, Clone, Serialize)]
pub struct DensitySpec {
    pub model: DensityModel,
    pub n: usize,
    /// Number of trajectories enumerated.
    pub trajectories: u64,
    pub terms: Vec<DensityTerm>,
}

impl DensitySpec {
    pub fn new(model: DensityModel, n: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("order must be at least 2, got {n}"));
        }
        if n > MAX_DENSITY_N {
            return Err(Error::Resource(format!(
                "exact densities are limited to n <= {MAX_DENSITY_N}, got {n}"
            )));
        }
        // weights kept exactly as counts per degree product, so the float
        // sum does not depend on how shards were merged
        type Acc = (u64, BTreeMap<(Vec<usize>, Vec<Vec<usize>>), BTreeMap<u64, u64>>);
        let (trajectories, grouped) = fold_bundles(
            n,
            model.side(),
            Acc::default,
            |acc: &mut Acc, b: ParamBundle| {
                let key = (
                    b.order.inverse().one_line().to_vec(),
                    b.blocks().into_iter().map(<[usize]>::to_vec).collect(),
                );
                let prod: u64 = b.degs.iter().map(|&d| d as u64).product();
                *acc.1.entry(key).or_default().entry(prod).or_insert(0) += 1;
                acc.0 += 1;
                Ok(())
            },
            |mut a, b| {
                a.0 += b.0;
                for (k, w) in b.1 {
                    let slot = a.1.entry(k).or_default();
                    for (prod, c) in w {
                        *slot.entry(prod).or_insert(0) += c;
                    }
                }
                a
            },
        )?;
        let terms = grouped
            .into_iter()
            .map(|((rank_to_coord, blocks), weight)| DensityTerm {
                weight: weight.iter().map(|(&prod, &c)| c as f64 / prod as f64).sum(),
                rank_to_coord,
                blocks: blocks
                    .into_iter()
                    .map(|b| b.into_iter().map(|d| d as f64).collect())
                    .collect(),
            })
            .collect();
        Ok(Self { model, n, trajectories, terms })
    }

    pub fn total_weight(&self) -> f64 {
        self.terms.iter().map(|t| t.weight).sum()
    }
}

/// `Σ weight · Π_k h_k(v_{σ^{-1}(k)} - v_{σ^{-1}(k-1)})`, the first gap
/// measured from 0 and `h_k` the density of block `k`.
///
/// At a point with `m` equal coordinates every ordering of them contributes
/// its one-sided limit, so the sum is divided by `m!`; this keeps the value
/// continuous across ties where the density itself is continuous.
pub fn joint_density(spec: &DensitySpec, point: &[f64]) -> Result<f64> {
    if point.len() != spec.n - 1 {
        return invalid(format!("point must have {} coordinates", spec.n - 1));
    }
    let mut total = 0.0;
    for term in &spec.terms {
        let mut prev = 0.0;
        let mut value = term.weight;
        for (k, rates) in term.blocks.iter().enumerate() {
            let coord = point[term.rank_to_coord[k] - 1];
            value *= hypoexp_density(rates, coord - prev)?;
            if value == 0.0 {
                break;
            }
            prev = coord;
        }
        total += value;
    }
    Ok(total / tie_orderings(point))
}

/// `Π m!` over groups of `m` equal coordinates.
fn tie_orderings(point: &[f64]) -> f64 {
    let mut sorted = point.to_vec();
    sorted.sort_by(f64::total_cmp);
    let mut out = 1.0;
    let mut run = 1.0;
    for w in sorted.windows(2) {
        if w[0] == w[1] {
            run += 1.0;
            out *= run;
        } else {
            run = 1.0;
        }
    }
    out
}

/// `Π_k Π_{d ∈ block k} d / (d + i ξ_k)`: the Fourier transform of the
/// block gaps along one trajectory.
pub fn characteristic_product(b: &ParamBundle, xi: &[f64]) -> Complex64 {
    b.blocks()
        .into_iter()
        .zip(xi)
        .map(|(block, &x)| {
            block
                .iter()
                .map(|&d| {
                    let d = d as f64;
                    Complex64::new(d, 0.0) / Complex64::new(d, x)
                })
                .product::<Complex64>()
        })
        .product()
}

/// Order permutation of the coordinates of one sample.
pub fn order_of(times: &[f64]) -> Permutation {
    Permutation::ranking(times)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::{enumerate_sorting_networks, enumerate_syt, network_params, staircase, tableau_params};
    use crate::symbolic::generating_factor;

    #[test]
    fn order_two() {
        let spec = DensitySpec::new(DensityModel::V, 2).unwrap();
        for u in [0.0f64, 0.4, 2.5] {
            assert!((joint_density(&spec, &[u]).unwrap() - (-u).exp()).abs() < 1e-14);
        }
        assert_eq!(joint_density(&spec, &[-0.1]).unwrap(), 0.0);
    }

    #[test]
    fn order_three_hand_value() {
        let spec = DensitySpec::new(DensityModel::V, 3).unwrap();
        let conv = 2.0 * ((-0.7f64).exp() - (-1.4f64).exp());
        let want = 0.5 * conv * (-0.1f64).exp();
        let got = joint_density(&spec, &[0.7, 0.8]).unwrap();
        assert!((got - want).abs() < 1e-12);
        assert!((got - 0.2262).abs() < 1e-4);
    }

    #[test]
    fn ties_take_the_continuous_value() {
        let spec = DensitySpec::new(DensityModel::V, 3).unwrap();
        for a in [0.3f64, 1.0, 2.2] {
            let limit = (-2.0 * a).exp() * a.exp_m1();
            assert!((joint_density(&spec, &[a, a]).unwrap() - limit).abs() < 1e-12);
            let near = joint_density(&spec, &[a, a + 1e-9]).unwrap();
            assert!((near - limit).abs() < 1e-8);
        }
        assert_eq!(tie_orderings(&[1.0, 2.0, 1.0, 1.0, 2.0]), 12.0);
    }

    #[test]
    fn models_agree_at_order_three() {
        let u = DensitySpec::new(DensityModel::U, 3).unwrap();
        let v = DensitySpec::new(DensityModel::V, 3).unwrap();
        for (a, b) in [(0.2, 1.3), (2.0, 0.1), (0.5, 0.5), (3.3, 3.4)] {
            let (x, y) = (joint_density(&u, &[a, b]).unwrap(), joint_density(&v, &[a, b]).unwrap());
            assert!((x - y).abs() < 1e-12, "{a},{b}");
        }
    }

    #[test]
    fn weights_sum_to_one() {
        for n in 2..=5 {
            for model in [DensityModel::U, DensityModel::V] {
                let spec = DensitySpec::new(model, n).unwrap();
                assert!((spec.total_weight() - 1.0).abs() < 1e-12);
            }
        }
        assert_eq!(DensitySpec::new(DensityModel::U, 5).unwrap().trajectories, 768);
        assert!(matches!(DensitySpec::new(DensityModel::U, 6), Err(Error::Resource(_))));
    }

    #[test]
    fn fourier_hook_order_three() {
        let xi = [0.7, -1.9];
        let point = [Complex64::new(0.0, xi[0]), Complex64::new(0.0, xi[1])];
        let tableaux = enumerate_syt(&staircase(3).unwrap()).map(|t| tableau_params(&t).unwrap());
        let networks = enumerate_sorting_networks(3).unwrap().map(|s| network_params(&s));
        for b in tableaux.chain(networks) {
            let prod_degs: f64 = b.degs.iter().map(|&d| d as f64).product();
            let lhs = generating_factor(&b).eval_complex(&point) * prod_degs;
            let rhs = characteristic_product(&b, &xi);
            assert!((lhs - rhs).norm() < 1e-14);
        }
    }
}
