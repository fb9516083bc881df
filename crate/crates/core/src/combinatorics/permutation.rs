use std::fmt;
use std::str::FromStr;

use serde::{Deserialize, Serialize};

use crate::error::{invalid, Error, Result};

/// A permutation of `{1..m}` in one-line notation.
///
/// Positions and values are both 1-based in the public API, matching the
/// usual notation `τ_j = (j j+1)`.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct Permutation(Vec<usize>);

impl Permutation {
    pub fn new(one_line: Vec<usize>) -> Result<Self> {
        let m = one_line.len();
        let mut seen = vec![false; m + 1];
        for &v in &one_line {
            if v == 0 || v > m || seen[v] {
                return invalid(format!("{one_line:?} is not a permutation of 1..{m}"));
            }
            seen[v] = true;
        }
        Ok(Self(one_line))
    }

    pub fn identity(m: usize) -> Self {
        Self((1..=m).collect())
    }

    pub fn reverse(m: usize) -> Self {
        Self((1..=m).rev().collect())
    }

    /// The permutation ranking `values`: `p(j) < p(k)` iff `values[j] < values[k]`.
    /// Ties are broken by position.
    pub fn ranking<T: PartialOrd>(values: &[T]) -> Self {
        let mut idx: Vec<usize> = (0..values.len()).collect();
        idx.sort_by(|&a, &b| {
            values[a]
                .partial_cmp(&values[b])
                .unwrap_or(std::cmp::Ordering::Equal)
                .then(a.cmp(&b))
        });
        let mut p = vec![0; values.len()];
        for (rank, &i) in idx.iter().enumerate() {
            p[i] = rank + 1;
        }
        Self(p)
    }

    /// All permutations of `1..=m` in lexicographic order.
    pub fn all(m: usize) -> Vec<Self> {
        let mut out = Vec::new();
        let mut cur: Vec<usize> = (1..=m).collect();
        loop {
            out.push(Self(cur.clone()));
            // next lexicographic permutation
            let Some(i) = (1..cur.len()).rev().find(|&i| cur[i - 1] < cur[i]) else {
                break;
            };
            let j = (i..cur.len()).rev().find(|&j| cur[j] > cur[i - 1]).unwrap();
            cur.swap(i - 1, j);
            cur[i..].reverse();
        }
        out
    }

    pub fn len(&self) -> usize {
        self.0.len()
    }

    pub fn is_empty(&self) -> bool {
        self.0.is_empty()
    }

    /// `p(j)` for 1-based `j`.
    pub fn apply(&self, j: usize) -> usize {
        self.0[j - 1]
    }

    pub fn one_line(&self) -> &[usize] {
        &self.0
    }

    pub fn inverse(&self) -> Self {
        let mut inv = vec![0; self.0.len()];
        for (i, &v) in self.0.iter().enumerate() {
            inv[v - 1] = i + 1;
        }
        Self(inv)
    }

    /// `(self ∘ other)(j) = self(other(j))`.
    pub fn compose(&self, other: &Permutation) -> Result<Self> {
        if self.len() != other.len() {
            return invalid("composing permutations of different sizes");
        }
        Ok(Self(other.0.iter().map(|&j| self.0[j - 1]).collect()))
    }

    /// Swaps the entries in positions `j` and `j + 1`.
    pub fn swap_positions(&mut self, j: usize) {
        self.0.swap(j - 1, j);
    }

    /// Positions `j` with `p(j) < p(j + 1)`.
    pub fn ascents(&self) -> Vec<usize> {
        self.0
            .windows(2)
            .enumerate()
            .filter(|(_, w)| w[0] < w[1])
            .map(|(i, _)| i + 1)
            .collect()
    }

    pub fn is_ascent(&self, j: usize) -> bool {
        self.0[j - 1] < self.0[j]
    }

    pub fn inversions(&self) -> usize {
        let mut count = 0;
        for i in 0..self.0.len() {
            for j in i + 1..self.0.len() {
                if self.0[i] > self.0[j] {
                    count += 1;
                }
            }
        }
        count
    }
}

/// Positions `j` with `p(j) < p(j + 1)`.
pub fn ascent_positions(p: &Permutation) -> Vec<usize> {
    p.ascents()
}

impl TryFrom<Vec<usize>> for Permutation {
    type Error = Error;

    fn try_from(v: Vec<usize>) -> Result<Self> {
        Self::new(v)
    }
}

impl From<Permutation> for Vec<usize> {
    fn from(p: Permutation) -> Self {
        p.0
    }
}

impl fmt::Display for Permutation {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, v) in self.0.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{v}")?;
        }
        write!(f, ")")
    }
}

impl FromStr for Permutation {
    type Err = Error;

    /// Parses `"(1,3,2)"`, `"1,3,2"` or `"1 3 2"`.
    fn from_str(s: &str) -> Result<Self> {
        let body = s.trim().trim_start_matches('(').trim_end_matches(')');
        let vals = body
            .split(|c: char| c == ',' || c.is_whitespace())
            .filter(|t| !t.is_empty())
            .map(|t| {
                t.parse::<usize>()
                    .map_err(|_| Error::InvalidArgument(format!("bad permutation entry {t:?}")))
            })
            .collect::<Result<Vec<_>>>()?;
        Self::new(vals)
    }
}
