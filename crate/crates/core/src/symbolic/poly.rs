use std::cmp::Ordering;
use std::collections::BTreeMap;
use std::fmt;

use num_bigint::BigInt;
use num_complex::Complex64;
use num_traits::{One, Signed, ToPrimitive, Zero};
use serde::{Deserialize, Serialize};

use super::modp;

/// Exponent vector, ordered graded-lexicographically (total degree first,
/// then lexicographic with `x1` most significant).
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
pub struct Monomial(pub Vec<u16>);

impl Monomial {
    pub fn one(nvars: usize) -> Self {
        Self(vec![0; nvars])
    }

    pub fn degree(&self) -> u32 {
        self.0.iter().map(|&e| u32::from(e)).sum()
    }
}

impl Ord for Monomial {
    fn cmp(&self, other: &Self) -> Ordering {
        self.degree().cmp(&other.degree()).then_with(|| self.0.cmp(&other.0))
    }
}

impl PartialOrd for Monomial {
    fn partial_cmp(&self, other: &Self) -> Option<Ordering> {
        Some(self.cmp(other))
    }
}

/// Multivariate polynomial with big-integer coefficients in `x1..x_nvars`.
/// No zero coefficient is ever stored.
#[derive(Debug, Clone, PartialEq, Eq, Serialize, Deserialize)]
#[serde(into = "PolyRepr", try_from = "PolyRepr")]
pub struct SparsePolynomial {
    nvars: usize,
    terms: BTreeMap<Monomial, BigInt>,
}

impl SparsePolynomial {
    pub fn zero(nvars: usize) -> Self {
        Self {
            nvars,
            terms: BTreeMap::new(),
        }
    }

    pub fn constant(nvars: usize, c: impl Into<BigInt>) -> Self {
        let mut p = Self::zero(nvars);
        p.add_term(Monomial::one(nvars), c.into());
        p
    }

    pub fn one(nvars: usize) -> Self {
        Self::constant(nvars, 1)
    }

    /// The variable `x_{var+1}` (0-based index).
    pub fn var(nvars: usize, var: usize) -> Self {
        let mut m = Monomial::one(nvars);
        m.0[var] = 1;
        let mut p = Self::zero(nvars);
        p.add_term(m, BigInt::one());
        p
    }

    /// Builds from `(exponents, coefficient)` pairs, merging duplicates.
    pub fn from_terms(nvars: usize, terms: impl IntoIterator<Item = (Vec<u16>, BigInt)>) -> Self {
        let mut p = Self::zero(nvars);
        for (e, c) in terms {
            assert_eq!(e.len(), nvars, "exponent vector length");
            p.add_term(Monomial(e), c);
        }
        p
    }

    pub fn nvars(&self) -> usize {
        self.nvars
    }

    pub fn is_zero(&self) -> bool {
        self.terms.is_empty()
    }

    pub fn num_terms(&self) -> usize {
        self.terms.len()
    }

    /// Terms in increasing graded-lex order.
    pub fn terms(&self) -> impl DoubleEndedIterator<Item = (&Monomial, &BigInt)> {
        self.terms.iter()
    }

    pub fn coefficient(&self, exps: &[u16]) -> BigInt {
        self.terms.get(&Monomial(exps.to_vec())).cloned().unwrap_or_default()
    }

    pub fn add_term(&mut self, m: Monomial, c: BigInt) {
        if c.is_zero() {
            return;
        }
        match self.terms.entry(m) {
            std::collections::btree_map::Entry::Vacant(v) => {
                v.insert(c);
            }
            std::collections::btree_map::Entry::Occupied(mut o) => {
                *o.get_mut() += c;
                if o.get().is_zero() {
                    o.remove();
                }
            }
        }
    }

    pub fn add_assign(&mut self, other: &SparsePolynomial) {
        for (m, c) in &other.terms {
            self.add_term(m.clone(), c.clone());
        }
    }

    pub fn scale(&self, c: &BigInt) -> Self {
        if c.is_zero() {
            return Self::zero(self.nvars);
        }
        Self {
            nvars: self.nvars,
            terms: self.terms.iter().map(|(m, v)| (m.clone(), v * c)).collect(),
        }
    }

    pub fn mul(&self, other: &SparsePolynomial) -> Self {
        let mut out = Self::zero(self.nvars);
        for (ma, ca) in &self.terms {
            for (mb, cb) in &other.terms {
                let e = ma.0.iter().zip(&mb.0).map(|(a, b)| a + b).collect();
                out.add_term(Monomial(e), ca * cb);
            }
        }
        out
    }

    /// Multiplies by `(x_{var+1} + shift)`.
    pub fn mul_linear(&self, var: usize, shift: i64) -> Self {
        let mut out = Self::zero(self.nvars);
        let d = BigInt::from(shift);
        for (m, c) in &self.terms {
            let mut up = m.clone();
            up.0[var] += 1;
            out.add_term(up, c.clone());
            out.add_term(m.clone(), c * &d);
        }
        out
    }

    /// Coefficients grouped by the monomial in the other variables, as
    /// dense vectors in powers of `x_{var+1}`.
    fn split_by(&self, var: usize) -> BTreeMap<Vec<u16>, Vec<BigInt>> {
        let mut groups: BTreeMap<Vec<u16>, Vec<BigInt>> = BTreeMap::new();
        for (m, c) in &self.terms {
            let mut rest = m.0.clone();
            let e = rest[var] as usize;
            rest[var] = 0;
            let slot = groups.entry(rest).or_default();
            if slot.len() <= e {
                slot.resize(e + 1, BigInt::zero());
            }
            slot[e] = c.clone();
        }
        groups
    }

    /// Exact quotient by `(x_{var+1} + shift)`, or `None` if it does not divide.
    pub fn div_linear(&self, var: usize, shift: i64) -> Option<Self> {
        let d = BigInt::from(shift);
        let mut out = Self::zero(self.nvars);
        for (rest, coeffs) in self.split_by(var) {
            // synthetic division from the top power down
            let mut carry = BigInt::zero();
            let mut quotient = vec![BigInt::zero(); coeffs.len().saturating_sub(1)];
            for i in (0..coeffs.len()).rev() {
                let v = &coeffs[i] - &d * &carry;
                if i == 0 {
                    if !v.is_zero() {
                        return None;
                    }
                } else {
                    quotient[i - 1] = v.clone();
                    carry = v;
                }
            }
            for (i, q) in quotient.into_iter().enumerate() {
                let mut e = rest.clone();
                e[var] = i as u16;
                out.add_term(Monomial(e), q);
            }
        }
        Some(out)
    }

    /// Substitutes `x_{var+1} = value`.
    pub fn substitute(&self, var: usize, value: i64) -> Self {
        let v = BigInt::from(value);
        let mut out = Self::zero(self.nvars);
        for (rest, coeffs) in self.split_by(var) {
            // Horner in the substituted variable
            let mut acc = BigInt::zero();
            for c in coeffs.iter().rev() {
                acc = acc * &v + c;
            }
            out.add_term(Monomial(rest), acc);
        }
        out
    }

    pub fn degree_in(&self, var: usize) -> u32 {
        self.terms.keys().map(|m| u32::from(m.0[var])).max().unwrap_or(0)
    }

    pub fn total_degree(&self) -> u32 {
        self.terms.keys().map(Monomial::degree).max().unwrap_or(0)
    }

    pub fn eval_mod(&self, point: &[u64], p: u64) -> u64 {
        self.terms.iter().fold(0, |acc, (m, c)| {
            let mono = m
                .0
                .iter()
                .zip(point)
                .fold(1, |a, (&e, &x)| modp::mul(a, modp::pow(x % p, u64::from(e), p), p));
            modp::add(acc, modp::mul(modp::from_bigint(c, p), mono, p), p)
        })
    }

    pub fn eval_f64(&self, point: &[f64]) -> f64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: f64 = m.0.iter().zip(point).map(|(&e, &x)| x.powi(i32::from(e))).product();
                c.to_f64().unwrap_or(f64::NAN) * mono
            })
            .sum()
    }

    pub fn eval_complex(&self, point: &[Complex64]) -> Complex64 {
        self.terms
            .iter()
            .map(|(m, c)| {
                let mono: Complex64 = m.0.iter().zip(point).map(|(&e, &x)| x.powi(i32::from(e))).product();
                mono * c.to_f64().unwrap_or(f64::NAN)
            })
            .sum()
    }
}

/// Serialized form: terms in increasing graded-lex order, coefficients as
/// decimal strings.
#[derive(Serialize, Deserialize)]
struct PolyRepr {
    nvars: usize,
    terms: Vec<(Vec<u16>, String)>,
}

impl From<SparsePolynomial> for PolyRepr {
    fn from(p: SparsePolynomial) -> Self {
        Self {
            nvars: p.nvars,
            terms: p.terms.into_iter().map(|(m, c)| (m.0, c.to_str_radix(10))).collect(),
        }
    }
}

impl TryFrom<PolyRepr> for SparsePolynomial {
    type Error = String;

    fn try_from(r: PolyRepr) -> Result<Self, String> {
        let mut p = Self::zero(r.nvars);
        for (e, c) in r.terms {
            if e.len() != r.nvars {
                return Err(format!("exponent vector {e:?} does not have {} entries", r.nvars));
            }
            let c: BigInt = c.parse().map_err(|_| format!("bad coefficient {c:?}"))?;
            p.add_term(Monomial(e), c);
        }
        Ok(p)
    }
}

impl fmt::Display for SparsePolynomial {
    /// Graded-lex descending, e.g. `x1 + 2*x2 + 5` or `-3*x1^2*x3 - 1`.
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        if self.terms.is_empty() {
            return write!(f, "0");
        }
        for (i, (m, c)) in self.terms.iter().rev().enumerate() {
            let negative = c.is_negative();
            let abs = c.abs();
            match (i, negative) {
                (0, true) => write!(f, "-")?,
                (0, false) => {}
                (_, true) => write!(f, " - ")?,
                (_, false) => write!(f, " + ")?,
            }
            let vars: Vec<String> = m
                .0
                .iter()
                .enumerate()
                .filter(|(_, &e)| e > 0)
                .map(|(k, &e)| if e == 1 { format!("x{}", k + 1) } else { format!("x{}^{e}", k + 1) })
                .collect();
            if vars.is_empty() {
                write!(f, "{abs}")?;
            } else if abs.is_one() {
                write!(f, "{}", vars.join("*"))?;
            } else {
                write!(f, "{abs}*{}", vars.join("*"))?;
            }
        }
        Ok(())
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::*;

    fn x(k: usize) -> SparsePolynomial {
        SparsePolynomial::var(3, k)
    }

    fn id_numerator() -> SparsePolynomial {
        let mut p = x(0);
        p.add_assign(&x(1).scale(&BigInt::from(2)));
        p.add_assign(&SparsePolynomial::constant(3, 5));
        p
    }

    #[test]
    fn display_is_graded_lex() {
        assert_eq!(id_numerator().to_string(), "x1 + 2*x2 + 5");
        let sq = x(0).mul(&x(0)).scale(&BigInt::from(-3));
        let mut p = sq.mul(&x(2));
        p.add_assign(&SparsePolynomial::constant(3, -1));
        assert_eq!(p.to_string(), "-3*x1^2*x3 - 1");
        assert_eq!(SparsePolynomial::zero(2).to_string(), "0");
    }

    #[test]
    fn linear_division() {
        let p = id_numerator().mul_linear(1, 3);
        assert_eq!(p.div_linear(1, 3).unwrap(), id_numerator());
        assert!(id_numerator().div_linear(0, 1).is_none());
        assert!(id_numerator().div_linear(1, 2).is_none());
        // x1 + 2x2 + 5 vanishes nowhere identically on x_k = -d
        for var in 0..3 {
            for d in 1..=3 {
                assert!(!id_numerator().substitute(var, -d).is_zero());
            }
        }
        assert!(x(0).mul_linear(0, 1).substitute(0, -1).is_zero());
    }

    #[test]
    fn serde_roundtrip() {
        let p = id_numerator().mul_linear(2, 4).scale(&BigInt::from(-7));
        let s = serde_json::to_string(&p).unwrap();
        assert_eq!(serde_json::from_str::<SparsePolynomial>(&s).unwrap(), p);
        assert!(serde_json::from_str::<SparsePolynomial>(r#"{"nvars":2,"terms":[[[1],"3"]]}"#).is_err());
    }

    #[test]
    fn zero_coefficients_vanish() {
        let mut p = x(0);
        p.add_assign(&x(0).scale(&BigInt::from(-1)));
        assert!(p.is_zero());
        assert_eq!(p.num_terms(), 0);
    }

    #[test]
    fn evaluation_routes_agree() {
        let p = id_numerator().mul_linear(0, 2).mul_linear(2, 1);
        let pt = [3u64, 4, 5];
        let prime = 1_000_000_007;
        let f = p.eval_f64(&[3.0, 4.0, 5.0]);
        assert_eq!(p.eval_mod(&pt, prime), f as u64 % prime);
        assert_eq!(f, (3.0 + 8.0 + 5.0) * 5.0 * 6.0);
    }

    fn arb_poly() -> impl Strategy<Value = SparsePolynomial> {
        proptest::collection::vec((proptest::collection::vec(0u16..4, 3), -20i64..20), 0..8)
            .prop_map(|ts| SparsePolynomial::from_terms(3, ts.into_iter().map(|(e, c)| (e, BigInt::from(c)))))
    }

    proptest! {
        #[test]
        fn mul_then_div_roundtrips(p in arb_poly(), var in 0usize..3, shift in 1i64..6) {
            let q = p.mul_linear(var, shift);
            prop_assert_eq!(q.div_linear(var, shift).unwrap(), p.clone());
            prop_assert!(q.substitute(var, -shift).is_zero());
        }

        #[test]
        fn multiplication_matches_pointwise(a in arb_poly(), b in arb_poly(), pt in proptest::collection::vec(0u64..1000, 3)) {
            let prime = 998_244_353;
            let lhs = a.mul(&b).eval_mod(&pt, prime);
            let rhs = modp::mul(a.eval_mod(&pt, prime), b.eval_mod(&pt, prime), prime);
            prop_assert_eq!(lhs, rhs);
        }
    }
}
