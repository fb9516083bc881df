use serde::{Deserialize, Serialize};

use super::permutation::Permutation;
use crate::error::{invalid, Result};

/// A reduced word `(s_1, ..., s_N)` for the reverse permutation of `1..=n`.
///
/// Applying the adjacent swaps `τ_{s_1}, τ_{s_2}, ...` to the positions of
/// `id_n` reaches `rev_n` in exactly `N = n(n-1)/2` steps, each one creating
/// a new inversion.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "NetworkRepr")]
pub struct SortingNetwork {
    n: usize,
    word: Vec<usize>,
}

#[derive(Deserialize)]
struct NetworkRepr {
    n: usize,
    word: Vec<usize>,
}

impl TryFrom<NetworkRepr> for SortingNetwork {
    type Error = crate::Error;

    fn try_from(r: NetworkRepr) -> Result<Self> {
        Self::new(r.n, r.word)
    }
}

impl SortingNetwork {
    pub fn new(n: usize, word: Vec<usize>) -> Result<Self> {
        if n < 2 {
            return invalid(format!("sorting network order must be at least 2, got {n}"));
        }
        let big_n = n * (n - 1) / 2;
        if word.len() != big_n {
            return invalid(format!("word has length {}, expected {big_n}", word.len()));
        }
        let mut p = Permutation::identity(n);
        for (step, &s) in word.iter().enumerate() {
            if s == 0 || s >= n {
                return invalid(format!("letter {s} at step {} is outside 1..{}", step + 1, n - 1));
            }
            if !p.is_ascent(s) {
                return invalid(format!("step {} swaps a non-ascent at position {s}", step + 1));
            }
            p.swap_positions(s);
        }
        Ok(Self { n, word })
    }

    /// Constructor for words already known to be valid (from enumeration or insertion).
    pub(crate) fn new_unchecked(n: usize, word: Vec<usize>) -> Self {
        debug_assert!(Self::new(n, word.clone()).is_ok());
        Self { n, word }
    }

    pub fn n(&self) -> usize {
        self.n
    }

    pub fn word(&self) -> &[usize] {
        &self.word
    }

    /// The permutations `ν(0) = id_n, ν(1), ..., ν(N) = rev_n` visited.
    pub fn trajectory(&self) -> Vec<Permutation> {
        let mut p = Permutation::identity(self.n);
        let mut out = Vec::with_capacity(self.word.len() + 1);
        out.push(p.clone());
        for &s in &self.word {
            p.swap_positions(s);
            out.push(p.clone());
        }
        out
    }
}
