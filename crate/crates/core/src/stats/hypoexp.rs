//! Density of a sum of independent exponentials.

use crate::error::{invalid, Result};

/// Density at `u` of `Σ E_i` with `E_i ~ Exp(rates[i])`, repeated rates allowed.
///
/// The sum is the absorption time of the chain `0 → 1 → … → m` leaving state
/// `i` at rate `rates[i]`, so the density is `rates[m-1] · exp(Tu)[0, m-1]`
/// for the bidiagonal generator `T`. The exponential is formed by scaling and
/// squaring; the scaled block is expanded by uniformization, which only adds
/// nonnegative terms.
pub fn hypoexp_density(rates: &[f64], u: f64) -> Result<f64> {
    if rates.is_empty() {
        return invalid("rate list is empty");
    }
    if let Some(r) = rates.iter().find(|r| !(r.is_finite() && **r > 0.0)) {
        return invalid(format!("rate {r} is not positive"));
    }
    if !u.is_finite() {
        return invalid(format!("argument {u} is not finite"));
    }
    if u < 0.0 {
        return Ok(0.0);
    }
    let m = rates.len();
    if m == 1 {
        return Ok(rates[0] * (-rates[0] * u).exp());
    }
    let top = exp_first_row(rates, u);
    Ok(rates[m - 1] * top[m - 1])
}

/// Upper triangular `m × m` matrix stored row-major.
struct Upper {
    m: usize,
    a: Vec<f64>,
}

impl Upper {
    fn zeros(m: usize) -> Self {
        Self { m, a: vec![0.0; m * m] }
    }

    fn get(&self, i: usize, j: usize) -> f64 {
        self.a[i * self.m + j]
    }

    fn mul(&self, other: &Upper) -> Upper {
        let m = self.m;
        let mut out = Upper::zeros(m);
        for i in 0..m {
            for k in i..m {
                let a = self.get(i, k);
                if a == 0.0 {
                    continue;
                }
                for j in k..m {
                    out.a[i * m + j] += a * other.get(k, j);
                }
            }
        }
        out
    }
}

fn exp_first_row(rates: &[f64], u: f64) -> Vec<f64> {
    let m = rates.len();
    let q = rates.iter().copied().fold(0.0, f64::max);
    // scale so that q·h <= 1
    let squarings = if q * u > 1.0 { (q * u).log2().ceil() as u32 } else { 0 };
    let h = u / 2f64.powi(squarings as i32);
    let qh = q * h;

    // P = I + T/q is substochastic and bidiagonal
    let diag: Vec<f64> = rates.iter().map(|r| 1.0 - r / q).collect();
    let sup: Vec<f64> = rates.iter().map(|r| r / q).collect();

    // exp(Th) = e^{-qh} Σ_k (qh)^k/k! P^k; entry (i, j) starts at k = j - i,
    // and 25 terms past that leave a relative tail below 1/25!.
    let terms = m - 1 + 25;
    let mut e = Upper::zeros(m);
    let mut power = Upper::zeros(m);
    for i in 0..m {
        power.a[i * m + i] = 1.0;
    }
    let mut weight = (-qh).exp();
    for k in 0..=terms {
        for (dst, src) in e.a.iter_mut().zip(&power.a) {
            *dst += weight * src;
        }
        // power ← power · P
        let mut next = Upper::zeros(m);
        for i in 0..m {
            for j in i..m {
                let mut v = power.get(i, j) * diag[j];
                if j > i {
                    v += power.get(i, j - 1) * sup[j - 1];
                }
                next.a[i * m + j] = v;
            }
        }
        power = next;
        weight *= qh / (k + 1) as f64;
    }
    for _ in 0..squarings {
        e = e.mul(&e);
    }
    (0..m).map(|j| e.get(0, j)).collect()
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn rel(a: f64, b: f64) -> f64 {
        (a - b).abs() / b.abs().max(1e-300)
    }

    /// Partial fractions, valid for distinct rates.
    fn distinct_oracle(rates: &[f64], u: f64) -> f64 {
        let prod: f64 = rates.iter().product();
        rates
            .iter()
            .enumerate()
            .map(|(i, &ri)| {
                let denom: f64 = rates.iter().enumerate().filter(|&(j, _)| j != i).map(|(_, &rj)| rj - ri).product();
                (-ri * u).exp() / denom
            })
            .sum::<f64>()
            * prod
    }

    fn erlang(k: usize, rate: f64, u: f64) -> f64 {
        let fact: f64 = (1..k).map(|i| i as f64).product();
        rate.powi(k as i32) * u.powi(k as i32 - 1) * (-rate * u).exp() / fact
    }

    #[test]
    fn closed_forms() {
        assert_eq!(hypoexp_density(&[1.0], 0.0).unwrap(), 1.0);
        assert!(rel(hypoexp_density(&[1.0, 1.0], 1.0).unwrap(), (-1.0f64).exp()) < 1e-12);
        assert!(rel(hypoexp_density(&[2.0, 1.0], 2f64.ln()).unwrap(), 0.5) < 1e-12);
        assert_eq!(hypoexp_density(&[1.0, 2.0], -0.1).unwrap(), 0.0);
        assert_eq!(hypoexp_density(&[1.0, 2.0], 0.0).unwrap(), 0.0);
    }

    #[test]
    fn small_argument_reference() {
        // 50-digit evaluation of the partial fraction sum
        let got = hypoexp_density(&[0.25, 1.0, 1.75, 3.25, 7.5], 0.020931794828565463).unwrap();
        assert!(rel(got, 8.054577815553722640774698908878886e-8) < 1e-12);
    }

    #[test]
    fn rejects_bad_rates() {
        assert!(hypoexp_density(&[], 1.0).is_err());
        assert!(hypoexp_density(&[1.0, 0.0], 1.0).is_err());
        assert!(hypoexp_density(&[1.0, -2.0], 1.0).is_err());
        assert!(hypoexp_density(&[1.0, f64::NAN], 1.0).is_err());
    }

    #[test]
    fn erlang_agreement() {
        for k in 1..=20 {
            for &rate in &[0.5, 1.0, 3.0] {
                for &u in &[0.01, 0.3, 1.0, 4.0, 15.0, 60.0] {
                    let got = hypoexp_density(&vec![rate; k], u).unwrap();
                    let want = erlang(k, rate, u);
                    if want > 1e-250 {
                        assert!(rel(got, want) < 1e-10, "k={k} rate={rate} u={u}: {got} vs {want}");
                    }
                }
            }
        }
    }

    #[test]
    fn staircase_like_rate_lists() {
        let rates = [1.0, 2.0, 2.0, 3.0, 3.0, 3.0, 4.0, 4.0, 4.0, 4.0];
        let mass: f64 = (0..40_000).map(|i| hypoexp_density(&rates, (i as f64 + 0.5) * 1e-3).unwrap() * 1e-3).sum();
        assert!((mass - 1.0).abs() < 1e-6);
        let mean: f64 = rates.iter().map(|r| 1.0 / r).sum();
        let m1: f64 = (0..40_000)
            .map(|i| {
                let u = (i as f64 + 0.5) * 1e-3;
                u * hypoexp_density(&rates, u).unwrap() * 1e-3
            })
            .sum();
        assert!((m1 - mean).abs() < 1e-6);
    }

    proptest! {
        #[test]
        fn matches_partial_fractions(
            rates in proptest::collection::btree_set(1u32..40, 1..7),
            u in 0.5f64..6.0,
        ) {
            // partial fractions cancel badly for small u; stay where the
            // oracle is itself accurate
            let rates: Vec<f64> = rates.into_iter().map(|r| f64::from(r) * 0.25).collect();
            let want = distinct_oracle(&rates, u);
            prop_assume!(want > 1e-8);
            let got = hypoexp_density(&rates, u).unwrap();
            prop_assert!(rel(got, want) < 1e-9, "{:?} {}: {} vs {}", rates, u, got, want);
        }

        #[test]
        fn permutation_invariant(mut rates in proptest::collection::vec(1u32..5, 1..12), u in 0.0f64..8.0, seed in 0u64..1000) {
            let a: Vec<f64> = rates.iter().map(|&r| f64::from(r)).collect();
            let k = rates.len();
            rates.rotate_left((seed as usize) % k);
            rates.reverse();
            let b: Vec<f64> = rates.iter().map(|&r| f64::from(r)).collect();
            let (x, y) = (hypoexp_density(&a, u).unwrap(), hypoexp_density(&b, u).unwrap());
            prop_assert!((x - y).abs() <= 1e-12 * x.abs().max(1e-300) || (x - y).abs() < 1e-300);
        }
    }
}
