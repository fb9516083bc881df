//! Maximal weight of `k` non-intersecting directed lattice paths.

use std::collections::HashMap;
use std::ops::{Add, Sub};

use num_traits::Zero;

use crate::combinatorics::{Cell, Tableau};
use crate::error::{invalid, Result};

/// Entry domain for path-maximum computations: non-negative integers,
/// big integers or reals. Only `+`, `-` and comparisons are needed.
pub trait Weight: Clone + PartialOrd + Add<Output = Self> + Sub<Output = Self> + Zero {}

impl<T> Weight for T where T: Clone + PartialOrd + Add<Output = T> + Sub<Output = T> + Zero {}

pub(crate) fn max_of<T: PartialOrd>(a: T, b: T) -> T {
    if b > a {
        b
    } else {
        a
    }
}

/// Maximum total weight of `k` vertex-disjoint down/right paths in an
/// `m × n` rectangle, path `i` running from `(0, i)` to `(m-1, n-k+i)`.
///
/// Sweeps rows; the state is the strictly increasing tuple of columns at
/// which the paths enter the current row. Inside a row, path `i` covers a
/// column interval `[a_i, b_i]` and drops to the next row at `b_i`, so the
/// paths stay disjoint iff `b_i < a_{i+1}`.
pub(crate) fn rectangle_max<T: Weight>(rect: &[Vec<T>], k: usize) -> T {
    let m = rect.len();
    let n = rect.first().map_or(0, Vec::len);
    assert!(k >= 1 && k <= m.min(n), "k = {k} out of range for a {m}x{n} rectangle");

    let mut states: HashMap<Vec<usize>, T> = HashMap::new();
    states.insert((0..k).collect(), T::zero());
    for row in rect {
        let mut next: HashMap<Vec<usize>, T> = HashMap::new();
        let mut exits = Vec::with_capacity(k);
        for (entries, value) in &states {
            extend_row(row, n, k, entries, 0, value.clone(), &mut exits, &mut next);
        }
        states = next;
    }
    let target: Vec<usize> = (n - k..n).collect();
    states.remove(&target).expect("target state is always reachable")
}

#[allow(clippy::too_many_arguments)]
fn extend_row<T: Weight>(
    row: &[T],
    n: usize,
    k: usize,
    entries: &[usize],
    i: usize,
    acc: T,
    exits: &mut Vec<usize>,
    next: &mut HashMap<Vec<usize>, T>,
) {
    if i == k {
        let slot = next.entry(exits.clone()).or_insert_with(|| acc.clone());
        if acc > *slot {
            *slot = acc;
        }
        return;
    }
    let start = entries[i];
    // path i can never pass its final column n-k+i
    let stop = if i + 1 < k { entries[i + 1] - 1 } else { n - 1 }.min(n - k + i);
    let mut sum = acc;
    for b in start..=stop {
        sum = sum + row[b].clone();
        exits.push(b);
        extend_row(row, n, k, entries, i + 1, sum.clone(), exits, next);
        exits.pop();
    }
}

fn subrectangle<T: Clone>(x: &Tableau<T>, m: usize, n: usize, flip_rows: bool) -> Vec<Vec<T>> {
    let mut rect: Vec<Vec<T>> = x.rows()[..m].iter().map(|r| r[..n].to_vec()).collect();
    if flip_rows {
        rect.reverse();
    }
    rect
}

/// Greene invariant at border box `(m, n)` (1-based): the maximum weight of
/// `k` non-intersecting paths inside `[1, m] × [1, n]`.
///
/// Primal paths run from `(1, i)` down to `(m, n-k+i)`; dual paths run from
/// `(m, i)` up to `(1, n-k+i)`. The dual value is the primal value of the
/// row-flipped rectangle.
pub fn greene_invariant<T: Weight>(x: &Tableau<T>, m: usize, n: usize, k: usize, dual: bool) -> Result<T> {
    if m == 0 || n == 0 {
        return invalid("box coordinates are 1-based");
    }
    let shape = x.shape();
    let c = Cell(m - 1, n - 1);
    if !shape.contains(c) || shape.contains(Cell(m, n)) {
        return invalid(format!("({m},{n}) is not a border box of {shape}"));
    }
    if k == 0 || k > m.min(n) {
        return invalid(format!("k = {k} outside 1..={}", m.min(n)));
    }
    Ok(rectangle_max(&subrectangle(x, m, n, dual), k))
}

/// All Greene invariants `G_1..G_{min(m,n)}` at a border box given as a 0-based cell.
pub(crate) fn invariants_at<T: Weight>(x: &Tableau<T>, c: Cell, dual: bool) -> Vec<T> {
    let rect = subrectangle(x, c.0 + 1, c.1 + 1, dual);
    (1..=(c.0 + 1).min(c.1 + 1)).map(|k| rectangle_max(&rect, k)).collect()
}

#[cfg(test)]
pub(crate) mod oracle {
    //! Exhaustive enumeration of non-intersecting path families.

    use super::*;

    /// Every down/right path from `from` to `to` as its list of cells.
    pub fn paths(from: Cell, to: Cell) -> Vec<Vec<Cell>> {
        if from.0 > to.0 || from.1 > to.1 {
            return Vec::new();
        }
        if from == to {
            return vec![vec![from]];
        }
        let mut out = Vec::new();
        for step in [Cell(from.0 + 1, from.1), Cell(from.0, from.1 + 1)] {
            for mut rest in paths(step, to) {
                rest.insert(0, from);
                out.push(rest);
            }
        }
        out
    }

    pub fn brute_rectangle_max(rect: &[Vec<i64>], k: usize) -> i64 {
        let m = rect.len();
        let n = rect[0].len();
        let families: Vec<Vec<Vec<Cell>>> = (0..k)
            .map(|i| paths(Cell(0, i), Cell(m - 1, n - k + i)))
            .collect();
        let mut best = None;
        let mut chosen: Vec<&Vec<Cell>> = Vec::new();
        fn rec<'a>(
            families: &'a [Vec<Vec<Cell>>],
            rect: &[Vec<i64>],
            chosen: &mut Vec<&'a Vec<Cell>>,
            best: &mut Option<i64>,
        ) {
            if chosen.len() == families.len() {
                let total = chosen.iter().flat_map(|p| p.iter()).map(|c| rect[c.0][c.1]).sum();
                *best = Some(best.map_or(total, |b: i64| b.max(total)));
                return;
            }
            for p in &families[chosen.len()] {
                if chosen.iter().all(|q| q.iter().all(|c| !p.contains(c))) {
                    chosen.push(p);
                    rec(families, rect, chosen, best);
                    chosen.pop();
                }
            }
        }
        rec(&families, rect, &mut chosen, &mut best);
        best.expect("some non-intersecting family exists")
    }
}

#[cfg(test)]
mod tests {
    use proptest::prelude::*;

    use super::oracle::brute_rectangle_max;
    use super::*;

    fn square() -> Tableau<i64> {
        Tableau::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap()
    }

    #[test]
    fn two_by_two_examples() {
        assert_eq!(greene_invariant(&square(), 2, 2, 1, false).unwrap(), 8);
        assert_eq!(greene_invariant(&square(), 2, 2, 2, false).unwrap(), 10);
        assert_eq!(greene_invariant(&square(), 2, 2, 1, true).unwrap(), 9);
        assert_eq!(greene_invariant(&square(), 2, 2, 2, true).unwrap(), 10);
    }

    #[test]
    fn rejects_bad_arguments() {
        assert!(greene_invariant(&square(), 1, 1, 1, false).is_err());
        assert!(greene_invariant(&square(), 2, 2, 3, false).is_err());
        assert!(greene_invariant(&square(), 2, 2, 0, false).is_err());
        assert!(greene_invariant(&square(), 3, 1, 1, false).is_err());
    }

    #[test]
    fn full_k_covers_rectangle() {
        let rect: Vec<Vec<i64>> = vec![vec![1, 5, 2], vec![7, 0, 3]];
        let total: i64 = rect.iter().flatten().sum();
        assert_eq!(rectangle_max(&rect, 2), total);
    }

    #[test]
    fn dp_matches_brute_force_on_small_rectangles() {
        // every rectangle with at most 10 boxes, entries in {0,1,2} sampled exhaustively
        // up to 6 boxes and deterministically beyond
        for m in 1..=10usize {
            for n in 1..=10usize {
                if m * n > 10 {
                    continue;
                }
                let boxes = m * n;
                let count = if boxes <= 6 { 3usize.pow(boxes as u32) } else { 400 };
                for code in 0..count {
                    let mut c = if boxes <= 6 { code } else { code * 7919 + 13 };
                    let rect: Vec<Vec<i64>> = (0..m)
                        .map(|_| {
                            (0..n)
                                .map(|_| {
                                    let v = (c % 3) as i64;
                                    c /= 3;
                                    v
                                })
                                .collect()
                        })
                        .collect();
                    for k in 1..=m.min(n) {
                        assert_eq!(rectangle_max(&rect, k), brute_rectangle_max(&rect, k), "{rect:?} k={k}");
                    }
                }
            }
        }
    }

    proptest! {
        #[test]
        fn dp_matches_brute_force_random(
            (m, n) in (1usize..=4, 1usize..=4),
            seed in proptest::collection::vec(0i64..50, 16),
        ) {
            let rect: Vec<Vec<i64>> = (0..m).map(|i| (0..n).map(|j| seed[i * 4 + j]).collect()).collect();
            for k in 1..=m.min(n) {
                prop_assert_eq!(rectangle_max(&rect, k), brute_rectangle_max(&rect, k));
            }
        }
    }
}
