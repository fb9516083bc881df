use super::greene::{invariants_at, Weight};
use crate::combinatorics::{Cell, Tableau};

/// RSK image of an arbitrary tableau: the unique interlacing tableau whose
/// diagonal partial sums ending at each border box equal the primal Greene
/// invariants there.
pub fn rsk<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    by_diagonals(x, false)
}

/// Burge image: as [`rsk`] but with the dual (bottom-left to top-right) path families.
pub fn burge<T: Weight>(x: &Tableau<T>) -> Tableau<T> {
    by_diagonals(x, true)
}

fn by_diagonals<T: Weight>(x: &Tableau<T>, dual: bool) -> Tableau<T> {
    let mut out = x.map(|_| T::zero());
    for border in x.shape().border_cells() {
        let mut prev = T::zero();
        for (step, g) in invariants_at(x, border, dual).into_iter().enumerate() {
            let cell = Cell(border.0 - step, border.1 - step);
            out.set(cell, g.clone() - prev);
            prev = g;
        }
    }
    out
}

#[cfg(test)]
mod tests {
    use super::*;

    fn t(rows: Vec<Vec<u64>>) -> Tableau<u64> {
        Tableau::from_rows(rows).unwrap()
    }

    #[test]
    fn two_by_two() {
        let x = t(vec![vec![1, 2], vec![3, 4]]);
        assert_eq!(rsk(&x).into_rows(), vec![vec![2, 3], vec![4, 8]]);
        assert_eq!(burge(&x).into_rows(), vec![vec![1, 3], vec![4, 9]]);
    }

    #[test]
    fn single_box_and_zeros() {
        let x = t(vec![vec![5]]);
        assert_eq!(rsk(&x), x);
        assert_eq!(burge(&x), x);
        let z = t(vec![vec![0, 0, 0], vec![0, 0], vec![0]]);
        assert_eq!(rsk(&z), z);
        assert_eq!(burge(&z), z);
    }

    #[test]
    fn single_row_gives_running_sums() {
        let x = t(vec![vec![2, 1]]);
        assert_eq!(rsk(&x).into_rows(), vec![vec![2, 3]]);
        assert_eq!(burge(&x).into_rows(), vec![vec![2, 3]]);
    }

    #[test]
    fn empty_shape() {
        let x: Tableau<u64> = Tableau::from_rows(vec![]).unwrap();
        assert_eq!(rsk(&x), x);
    }

    #[test]
    fn real_entries() {
        let x = Tableau::from_rows(vec![vec![0.5, 0.25], vec![1.0]]).unwrap();
        let r = rsk(&x);
        assert!(r.is_interlacing());
        assert_eq!(r.rows()[0], vec![0.5, 0.75]);
        assert_eq!(r.rows()[1], vec![1.5]);
    }
}
