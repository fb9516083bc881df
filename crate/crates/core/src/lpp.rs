//! Last passage percolation over a tableau of weights.

use serde::Serialize;

use crate::combinatorics::{Cell, Tableau};
use crate::correspondences::greene::{max_of, Weight};
use crate::error::{invalid, Result};

/// LPP tableau and dual LPP tableau of one weight array.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct LppPair<T> {
    #[serde(rename = "L")]
    pub l: Tableau<T>,
    #[serde(rename = "Lstar")]
    pub lstar: Tableau<T>,
}

/// `L(1,1; i,j)` for every box: `L_{i,j} = x_{i,j} + max(L_{i-1,j}, L_{i,j-1})`.
pub fn lpp_tableau<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    let mut out = x.map(|_| T::zero());
    for (c, v) in x.iter() {
        let up = if c.0 > 0 { out[Cell(c.0 - 1, c.1)].clone() } else { T::zero() };
        let left = if c.1 > 0 { out[Cell(c.0, c.1 - 1)].clone() } else { T::zero() };
        out.set(c, v.clone() + max_of(up, left));
    }
    out
}

/// `L(i,1; 1,j)` for every box: the heaviest up/right path from the start
/// of row `i` to the top of column `j`.
///
/// For each start row the rows above it are swept bottom-up with the primal
/// recursion, which is the primal DP on the row-flipped rectangle.
pub fn dual_lpp_tableau<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    let shape = x.shape();
    let mut out = x.map(|_| T::zero());
    let rows = x.rows();
    for start in 0..shape.num_rows() {
        let width = shape.row_len(start);
        let mut below: Vec<T> = Vec::new();
        for r in (0..=start).rev() {
            let mut cur: Vec<T> = Vec::with_capacity(width);
            for j in 0..width {
                let from_below = below.get(j).cloned().unwrap_or_else(T::zero);
                let from_left = if j > 0 { cur[j - 1].clone() } else { T::zero() };
                cur.push(rows[r][j].clone() + max_of(from_below, from_left));
            }
            below = cur;
        }
        for (j, v) in below.into_iter().enumerate() {
            out.set(Cell(start, j), v);
        }
    }
    out
}

pub fn lpp_pair<T: Weight>(x: &Tableau<T>) -> LppPair<T> {
    LppPair {
        l: lpp_tableau(x),
        lstar: dual_lpp_tableau(x),
    }
}

/// `L(a,b; c,d)` with 1-based box coordinates: the heaviest minimal-length
/// lattice path between the two boxes. Every box of the spanned rectangle
/// must lie in the shape.
pub fn lpp_point_to_point<T: Weight>(x: &Tableau<T>, from: (usize, usize), to: (usize, usize)) -> Result<T> {
    let ((a, b), (c, d)) = (from, to);
    if a == 0 || b == 0 || c == 0 || d == 0 {
        return invalid("box coordinates are 1-based");
    }
    let (rmax, cmax) = (a.max(c), b.max(d));
    if !x.shape().contains(Cell(rmax - 1, cmax - 1)) {
        return invalid(format!("rectangle spanned by ({a},{b}) and ({c},{d}) leaves the shape"));
    }
    // Walk rows from a toward c and columns from b toward d.
    let rows: Vec<usize> = if a <= c { (a..=c).collect() } else { (c..=a).rev().collect() };
    let cols: Vec<usize> = if b <= d { (b..=d).collect() } else { (d..=b).rev().collect() };
    let mut prev: Vec<T> = Vec::new();
    for (ri, &r) in rows.iter().enumerate() {
        let mut cur: Vec<T> = Vec::with_capacity(cols.len());
        for (ci, &col) in cols.iter().enumerate() {
            let w = x[Cell(r - 1, col - 1)].clone();
            let best = match (ri > 0, ci > 0) {
                (false, false) => T::zero(),
                (true, false) => prev[ci].clone(),
                (false, true) => cur[ci - 1].clone(),
                (true, true) => max_of(prev[ci].clone(), cur[ci - 1].clone()),
            };
            cur.push(w + best);
        }
        prev = cur;
    }
    Ok(prev.pop().expect("non-empty rectangle"))
}

/// Corner vectors of a staircase weight array:
/// `V(k) = L(1,1; n-k,k)` and `W(k) = L(n-k,1; 1,k)` for `k = 1..n-1`.
pub fn vn_wn_from_weights<T: Weight>(x: &Tableau<T>) -> Result<(Vec<T>, Vec<T>)> {
    let Some(n) = x.shape().staircase_order() else {
        return invalid(format!("weight shape {} is not a staircase", x.shape()));
    };
    let pair = lpp_pair(x);
    Ok(corner_vectors(n, &pair))
}

pub(crate) fn corner_vectors<T: Clone>(n: usize, pair: &LppPair<T>) -> (Vec<T>, Vec<T>) {
    let corner = |k: usize| Cell(n - k - 1, k - 1);
    let v = (1..n).map(|k| pair.l[corner(k)].clone()).collect();
    let w = (1..n).map(|k| pair.lstar[corner(k)].clone()).collect();
    (v, w)
}
