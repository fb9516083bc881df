use std::fmt;

use num_bigint::BigUint;
use num_traits::One;
use serde::{Deserialize, Serialize};

use crate::error::{invalid, Result};

/// A box of a diagram, as 0-based `(row, column)`.
///
/// Box `(i, j)` in 1-based notation is `Cell(i - 1, j - 1)`.
#[derive(Debug, Clone, Copy, PartialEq, Eq, PartialOrd, Ord, Hash, Serialize, Deserialize)]
pub struct Cell(pub usize, pub usize);

impl Cell {
    pub fn row(self) -> usize {
        self.0
    }

    pub fn col(self) -> usize {
        self.1
    }

    /// Diagonal index `col - row`.
    pub fn diagonal(self) -> isize {
        self.1 as isize - self.0 as isize
    }
}

/// A partition drawn as a left-justified array of boxes.
#[derive(Debug, Clone, PartialEq, Eq, Hash, PartialOrd, Ord, Default, Serialize, Deserialize)]
#[serde(try_from = "Vec<usize>", into = "Vec<usize>")]
pub struct YoungDiagram {
    rows: Vec<usize>,
}

impl YoungDiagram {
    /// Builds a diagram from row lengths. Trailing zero rows are dropped.
    pub fn new(mut rows: Vec<usize>) -> Result<Self> {
        while rows.last() == Some(&0) {
            rows.pop();
        }
        if rows.windows(2).any(|w| w[0] < w[1]) {
            return invalid(format!("row lengths {rows:?} are not weakly decreasing"));
        }
        if rows.contains(&0) {
            return invalid("zero-length row inside a diagram");
        }
        Ok(Self { rows })
    }

    pub fn empty() -> Self {
        Self::default()
    }

    /// The staircase `(n-1, n-2, ..., 1)` with `n(n-1)/2` boxes.
    pub fn staircase(n: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("staircase order must be at least 2, got {n}"));
        }
        Ok(Self {
            rows: (1..n).rev().collect(),
        })
    }

    /// If this diagram is a staircase, its order `n`.
    pub fn staircase_order(&self) -> Option<usize> {
        let n = self.rows.len() + 1;
        if n >= 2 && self.rows.iter().enumerate().all(|(i, &r)| r == n - 1 - i) {
            Some(n)
        } else {
            None
        }
    }

    pub fn rows(&self) -> &[usize] {
        &self.rows
    }

    pub fn num_rows(&self) -> usize {
        self.rows.len()
    }

    pub fn num_cols(&self) -> usize {
        self.rows.first().copied().unwrap_or(0)
    }

    /// Length of row `i` (0 for rows past the end).
    pub fn row_len(&self, i: usize) -> usize {
        self.rows.get(i).copied().unwrap_or(0)
    }

    /// Length of column `j`.
    pub fn col_len(&self, j: usize) -> usize {
        self.rows.iter().take_while(|&&r| r > j).count()
    }

    pub fn size(&self) -> usize {
        self.rows.iter().sum()
    }

    pub fn is_empty(&self) -> bool {
        self.rows.is_empty()
    }

    pub fn contains(&self, c: Cell) -> bool {
        c.1 < self.row_len(c.0)
    }

    /// Cells in row-major order.
    pub fn cells(&self) -> impl Iterator<Item = Cell> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, &len)| (0..len).map(move |j| Cell(i, j)))
    }

    pub fn is_subdiagram_of(&self, other: &YoungDiagram) -> bool {
        self.rows.len() <= other.rows.len()
            && self.rows.iter().zip(&other.rows).all(|(a, b)| a <= b)
    }

    /// Boxes of `bound` outside `self` whose addition keeps a Young diagram.
    pub fn addable_cells(&self, bound: &YoungDiagram) -> Result<Vec<Cell>> {
        if !self.is_subdiagram_of(bound) {
            return invalid(format!("{self} is not contained in {bound}"));
        }
        Ok(self.addable_rows_within(bound).map(|i| Cell(i, self.row_len(i))).collect())
    }

    /// Row indices where a box can be appended while staying inside `bound`.
    /// Assumes `self ⊆ bound`.
    pub(crate) fn addable_rows_within<'a>(
        &'a self,
        bound: &'a YoungDiagram,
    ) -> impl Iterator<Item = usize> + 'a {
        (0..=self.rows.len()).filter(move |&i| {
            let len = self.row_len(i);
            len < bound.row_len(i) && (i == 0 || self.row_len(i - 1) > len)
        })
    }

    /// Appends one box to row `i`. Caller guarantees the result is a diagram.
    pub(crate) fn push_box(&mut self, i: usize) {
        if i == self.rows.len() {
            self.rows.push(1);
        } else {
            self.rows[i] += 1;
        }
    }

    pub(crate) fn pop_box(&mut self, i: usize) {
        self.rows[i] -= 1;
        if self.rows[i] == 0 {
            self.rows.pop();
        }
    }

    /// Corners: boxes whose removal leaves a Young diagram, bottom-left first.
    pub fn corners(&self) -> Vec<Cell> {
        (0..self.rows.len())
            .rev()
            .filter(|&i| i + 1 == self.rows.len() || self.rows[i + 1] < self.rows[i])
            .map(|i| Cell(i, self.rows[i] - 1))
            .collect()
    }

    /// Border boxes (last box of their diagonal), bottom-left to top-right.
    pub fn border_cells(&self) -> Vec<Cell> {
        let mut out: Vec<Cell> = self
            .cells()
            .filter(|c| !self.contains(Cell(c.0 + 1, c.1 + 1)))
            .collect();
        out.sort_by_key(|c| c.diagonal());
        out
    }

    pub fn hook_length(&self, c: Cell) -> usize {
        (self.row_len(c.0) - c.1) + (self.col_len(c.1) - c.0) - 1
    }

    /// Number of standard tableaux of this shape, by the hook length formula.
    pub fn hook_count(&self) -> BigUint {
        let mut num = BigUint::one();
        for k in 2..=self.size() {
            num *= k;
        }
        let den = self
            .cells()
            .fold(BigUint::one(), |acc, c| acc * self.hook_length(c));
        num / den
    }

    /// All Young diagrams contained in `self`, in lexicographic row order.
    pub fn subdiagrams(&self) -> Vec<YoungDiagram> {
        fn rec(bound: &[usize], prefix: &mut Vec<usize>, out: &mut Vec<YoungDiagram>) {
            let i = prefix.len();
            let cap = if i == 0 { bound.first().copied().unwrap_or(0) } else { prefix[i - 1] };
            let cap = cap.min(bound.get(i).copied().unwrap_or(0));
            out.push(YoungDiagram { rows: prefix.clone() });
            for len in 1..=cap {
                prefix.push(len);
                rec(bound, prefix, out);
                prefix.pop();
            }
        }
        let mut out = Vec::new();
        rec(&self.rows, &mut Vec::new(), &mut out);
        out
    }
}

impl TryFrom<Vec<usize>> for YoungDiagram {
    type Error = crate::Error;

    fn try_from(rows: Vec<usize>) -> Result<Self> {
        Self::new(rows)
    }
}

impl From<YoungDiagram> for Vec<usize> {
    fn from(d: YoungDiagram) -> Self {
        d.rows
    }
}

impl fmt::Display for YoungDiagram {
    fn fmt(&self, f: &mut fmt::Formatter<'_>) -> fmt::Result {
        write!(f, "(")?;
        for (i, r) in self.rows.iter().enumerate() {
            if i > 0 {
                write!(f, ",")?;
            }
            write!(f, "{r}")?;
        }
        write!(f, ")")
    }
}
