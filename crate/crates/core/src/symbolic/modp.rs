//! Arithmetic modulo a prime below `2^64`.

use num_bigint::{BigInt, Sign};
use num_traits::ToPrimitive;

/// `2^61 - 1`.
pub const MERSENNE_61: u64 = (1 << 61) - 1;

pub fn add(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) + u128::from(b)) % u128::from(p)) as u64
}

pub fn mul(a: u64, b: u64, p: u64) -> u64 {
    ((u128::from(a) * u128::from(b)) % u128::from(p)) as u64
}

pub fn pow(mut base: u64, mut exp: u64, p: u64) -> u64 {
    let mut acc = 1 % p;
    base %= p;
    while exp > 0 {
        if exp & 1 == 1 {
            acc = mul(acc, base, p);
        }
        base = mul(base, base, p);
        exp >>= 1;
    }
    acc
}

/// Inverse by Fermat's little theorem; `a` must be nonzero mod `p`.
pub fn inv(a: u64, p: u64) -> u64 {
    debug_assert!(!a.is_multiple_of(p));
    pow(a, p - 2, p)
}

pub fn from_bigint(c: &BigInt, p: u64) -> u64 {
    let r = (c.magnitude() % p).to_u64().expect("residue fits in u64");
    match c.sign() {
        Sign::Minus if r != 0 => p - r,
        _ => r,
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn inverse_of_two() {
        let p = 1_000_000_007;
        assert_eq!(inv(2, p), 500_000_004);
        assert_eq!(mul(inv(12345, MERSENNE_61), 12345, MERSENNE_61), 1);
    }

    #[test]
    fn negative_residues() {
        assert_eq!(from_bigint(&BigInt::from(-1), 7), 6);
        assert_eq!(from_bigint(&BigInt::from(-14), 7), 0);
        assert_eq!(from_bigint(&BigInt::from(23), 7), 2);
    }
}
