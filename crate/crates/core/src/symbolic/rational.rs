use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use serde::{Deserialize, Serialize};

use super::factors::LinearFactorProduct;
use super::modp;
use super::poly::SparsePolynomial;
use crate::combinatorics::ParamBundle;
use crate::error::Result;

/// `numerator / denominator` with a denominator made of linear factors.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
pub struct RationalComponent {
    pub numerator: SparsePolynomial,
    pub denominator: LinearFactorProduct,
}

impl RationalComponent {
    pub fn zero(nvars: usize) -> Self {
        Self {
            numerator: SparsePolynomial::zero(nvars),
            denominator: LinearFactorProduct::one(),
        }
    }

    /// `1 / denominator`.
    pub fn reciprocal(nvars: usize, denominator: LinearFactorProduct) -> Self {
        Self {
            numerator: SparsePolynomial::one(nvars),
            denominator,
        }
    }

    pub fn nvars(&self) -> usize {
        self.numerator.nvars()
    }

    pub fn is_zero(&self) -> bool {
        self.numerator.is_zero()
    }

    /// Sum over a common denominator: the lcm of both, each numerator
    /// multiplied by its cofactor. The result is not reduced.
    pub fn add(&self, other: &Self) -> Self {
        let l = self.denominator.lcm(&other.denominator);
        let mut numerator = lift(&self.numerator, &l, &self.denominator);
        numerator.add_assign(&lift(&other.numerator, &l, &other.denominator));
        Self { numerator, denominator: l }
    }

    /// `Σ count_i / D_i` over a single lcm denominator. Callers pre-aggregate
    /// identical denominators so each distinct one is expanded once.
    pub fn sum_reciprocals<'a>(nvars: usize, terms: impl IntoIterator<Item = (&'a LinearFactorProduct, u64)> + Clone) -> Self {
        let l = terms
            .clone()
            .into_iter()
            .fold(LinearFactorProduct::one(), |acc, (d, _)| acc.lcm(d));
        let mut numerator = SparsePolynomial::zero(nvars);
        for (d, count) in terms {
            let cof = l.cofactor(d).expect("lcm is divisible by each term");
            numerator.add_assign(&cof.expand_scaled(nvars, count));
        }
        if numerator.is_zero() {
            return Self::zero(nvars);
        }
        Self { numerator, denominator: l }
    }

    /// Cancels every linear factor of the denominator that divides the
    /// numerator. Divisibility by `(x_k + d)` is tested by substituting
    /// `x_k = -d`.
    pub fn reduce(&self) -> Self {
        if self.numerator.is_zero() {
            return Self::zero(self.nvars());
        }
        let mut numerator = self.numerator.clone();
        let mut denominator = self.denominator.clone();
        let keys: Vec<(usize, u32)> = self.denominator.iter().map(|(k, _)| k).collect();
        for (var, shift) in keys {
            while denominator.multiplicity(var, shift) > 0 && numerator.substitute(var, -i64::from(shift)).is_zero() {
                numerator = numerator
                    .div_linear(var, i64::from(shift))
                    .expect("vanishing on the hyperplane implies divisibility");
                denominator.remove_one(var, shift);
            }
        }
        Self { numerator, denominator }
    }

    pub fn is_reduced(&self) -> bool {
        self.denominator
            .iter()
            .all(|((v, d), _)| !self.numerator.substitute(v, -i64::from(d)).is_zero())
    }

    /// Exact equality as rational functions: `a_num · b_den = b_num · a_den`,
    /// with both sides brought over the lcm so only cofactors are expanded.
    pub fn same_function(&self, other: &Self) -> bool {
        if self == other {
            return true;
        }
        let l = self.denominator.lcm(&other.denominator);
        lift(&self.numerator, &l, &self.denominator) == lift(&other.numerator, &l, &other.denominator)
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> Result<u64> {
        let den = self.denominator.eval_mod(point, p)?;
        Ok(modp::mul(self.numerator.eval_mod(point, p), modp::inv(den, p), p))
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.numerator.eval_f64(point) / self.denominator.eval_f64(point)
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.numerator.eval_complex(point) / self.denominator.eval_complex(point)
    }
}

fn lift(num: &SparsePolynomial, target: &LinearFactorProduct, den: &LinearFactorProduct) -> SparsePolynomial {
    let cof = target.cofactor(den).expect("target is a multiple of den");
    if cof.is_one() {
        return num.clone();
    }
    num.mul(&cof.expand_scaled(num.nvars(), BigInt::from(1)))
}

impl fmt::Display for RationalComponent {
    /// `(x1 + 2*x2 + 5)/((x1+1)(x1+2)^2(x2+1))`; single-term numerators and
    /// single-factor denominators are not parenthesized.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.numerator.num_terms() > 1 && !self.denominator.is_one() {
            write!(f, "({})", self.numerator)?;
        } else {
            write!(f, "{}", self.numerator)?;
        }
        if self.denominator.is_one() {
            return Ok(());
        }
        let single = {
            let mut it = self.denominator.iter();
            matches!((it.next(), it.next()), (Some((_, 1)), None))
        };
        if single {
            write!(f, "/{}", self.denominator)
        } else {
            write!(f, "/({})", self.denominator)
        }
    }
}

/// Denominator of the generating factor of a bundle: block `k` (0-based)
/// contributes `(x_{k+1} + deg)` for each out-degree in that block.
pub fn generating_denominator(b: &ParamBundle) -> LinearFactorProduct {
    let mut d = LinearFactorProduct::one();
    for (k, block) in b.blocks().into_iter().enumerate() {
        for &deg in block {
            d.push(k, deg as u32, 1);
        }
    }
    d
}

/// `f_t` or `g_s`: the reciprocal of [`generating_denominator`].
pub fn generating_factor(b: &ParamBundle) -> RationalComponent {
    RationalComponent::reciprocal(b.n() - 1, generating_denominator(b))
}
