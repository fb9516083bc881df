use std::collections::BTreeMap;
use std::fmt;

use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::modp;
use super::poly::SparsePolynomial;
use crate::error::Error;

/// A product `Π (x_{k+1} + d)^m` of linear factors, keyed by `(k, d)` with
/// `k` 0-based. Every stored multiplicity is at least one.
#[derive(Debug, Clone, Default, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(into = "Vec<(usize, u32, u32)>", from = "Vec<(usize, u32, u32)>")]
pub struct LinearFactorProduct {
    factors: BTreeMap<(usize, u32), u32>,
}

impl LinearFactorProduct {
    pub fn one() -> Self {
        Self::default()
    }

    pub fn is_one(&self) -> bool {
        self.factors.is_empty()
    }

    pub fn push(&mut self, var: usize, shift: u32, mult: u32) {
        if mult > 0 {
            *self.factors.entry((var, shift)).or_insert(0) += mult;
        }
    }

    /// Removes one copy of `(x_{var+1} + shift)`; returns whether it was present.
    pub fn remove_one(&mut self, var: usize, shift: u32) -> bool {
        match self.factors.get_mut(&(var, shift)) {
            Some(m) if *m > 1 => {
                *m -= 1;
                true
            }
            Some(_) => {
                self.factors.remove(&(var, shift));
                true
            }
            None => false,
        }
    }

    pub fn multiplicity(&self, var: usize, shift: u32) -> u32 {
        self.factors.get(&(var, shift)).copied().unwrap_or(0)
    }

    /// `((var, shift), multiplicity)` in increasing key order.
    pub fn iter(&self) -> impl Iterator<Item = ((usize, u32), u32)> + '_ {
        self.factors.iter().map(|(&k, &m)| (k, m))
    }

    pub fn degree(&self) -> u32 {
        self.factors.values().sum()
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.factors.iter().filter(|((v, _), _)| *v == var).map(|(_, m)| m).sum()
    }

    pub fn mul(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((v, d), m) in other.iter() {
            out.push(v, d, m);
        }
        out
    }

    pub fn lcm(&self, other: &Self) -> Self {
        let mut out = self.clone();
        for ((v, d), m) in other.iter() {
            let e = out.factors.entry((v, d)).or_insert(0);
            *e = (*e).max(m);
        }
        out
    }

    /// `self / other`, when `other` divides `self`.
    pub fn cofactor(&self, other: &Self) -> Option<Self> {
        let mut out = self.clone();
        for ((v, d), m) in other.iter() {
            let have = out.multiplicity(v, d);
            if have < m {
                return None;
            }
            if have == m {
                out.factors.remove(&(v, d));
            } else {
                out.factors.insert((v, d), have - m);
            }
        }
        Some(out)
    }

    /// `c · self` as an expanded polynomial.
    pub fn expand_scaled(&self, nvars: usize, c: impl Into<num_bigint::BigInt>) -> SparsePolynomial {
        let mut p = SparsePolynomial::constant(nvars, c);
        for ((v, d), m) in self.iter() {
            for _ in 0..m {
                p = p.mul_linear(v, i64::from(d));
            }
        }
        p
    }

    pub fn expand(&self, nvars: usize) -> SparsePolynomial {
        self.expand_scaled(nvars, 1)
    }

    /// Value at `point` mod `p`; a vanishing factor is reported as a pole.
    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64, Error> {
        let mut acc = 1;
        for ((v, d), m) in self.iter() {
            let f = modp::add(point[v] % p, u64::from(d) % p, p);
            if f == 0 {
                return Err(Error::PoleHit { var: v + 1, shift: d });
            }
            acc = modp::mul(acc, modp::pow(f, u64::from(m), p), p);
        }
        Ok(acc)
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.iter()
            .map(|((v, d), m)| (point[v] + f64::from(d)).powi(m as i32))
            .product()
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.iter()
            .map(|((v, d), m)| (point[v] + f64::from(d)).powi(m as i32))
            .product()
    }
}

impl From<LinearFactorProduct> for Vec<(usize, u32, u32)> {
    fn from(l: LinearFactorProduct) -> Self {
        l.iter().map(|((v, d), m)| (v, d, m)).collect()
    }
}

impl From<Vec<(usize, u32, u32)>> for LinearFactorProduct {
    fn from(v: Vec<(usize, u32, u32)>) -> Self {
        let mut out = Self::one();
        for (var, d, m) in v {
            out.push(var, d, m);
        }
        out
    }
}

impl fmt::Display for LinearFactorProduct {
    /// `(x1+1)(x1+2)^2(x2+1)`, or `1` for the empty product.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.is_one() {
            return write!(f, "1");
        }
        for ((v, d), m) in self.iter() {
            write!(f, "(x{}+{d})", v + 1)?;
            if m > 1 {
                write!(f, "^{m}")?;
            }
        }
        Ok(())
    }
}
