//! Edelman–Greene bijection between staircase standard tableaux and sorting
//! networks, via Coxeter–Knuth insertion.
//!
//! Inserting the letters `s_1, ..., s_N` of a sorting network of order `n`
//! always produces the insertion tableau with entry `i + j - 1` in box
//! `(i, j)` of `δ_n`; the recording tableau is the image. Read this way the
//! last occurrence of letter `k` is recorded in the corner `(n-k, k)`, so
//! last-swap times equal corner entries.

use crate::combinatorics::{SortingNetwork, StandardTableau, Tableau, YoungDiagram};
use crate::error::{invalid, Result};

/// Edelman–Greene row insertion of one letter into `p`.
/// Returns the row where a box was created.
fn insert(p: &mut Vec<Vec<usize>>, letter: usize) -> usize {
    let mut x = letter;
    for (i, row) in p.iter_mut().enumerate() {
        match row.iter().position(|&v| v > x) {
            None => {
                row.push(x);
                return i;
            }
            Some(pos) => {
                let y = row[pos];
                if y == x + 1 && pos > 0 && row[pos - 1] == x {
                    // row holds both x and x+1: unchanged, x+1 moves on
                    x += 1;
                } else {
                    row[pos] = x;
                    x = y;
                }
            }
        }
    }
    p.push(vec![x]);
    p.len() - 1
}

/// Undoes [`insert`]: removes the last box of row `r` and bumps back up,
/// returning the letter that leaves the first row.
fn uninsert(p: &mut [Vec<usize>], r: usize) -> Result<usize> {
    let mut y = p[r].pop().ok_or_else(|| crate::Error::InvalidArgument("empty row".into()))?;
    for row in p[..r].iter_mut().rev() {
        if let Ok(pos) = row.binary_search(&y) {
            if pos == 0 || row[pos - 1] != y - 1 {
                return invalid("insertion tableau is inconsistent");
            }
            y -= 1;
        } else {
            let Some(pos) = row.iter().rposition(|&v| v < y) else {
                return invalid("insertion tableau is inconsistent");
            };
            std::mem::swap(&mut row[pos], &mut y);
        }
    }
    Ok(y)
}

/// The insertion tableau shared by every sorting network of order `n`.
fn staircase_insertion_tableau(n: usize) -> Vec<Vec<usize>> {
    (1..n).map(|i| (i..n).collect()).collect()
}

/// `EG(t)`: the sorting network whose recording tableau is `t`.
///
/// Starting from the fixed insertion tableau, the boxes holding
/// `N, N-1, ..., 1` in `t` are uninserted in turn; the letters that leave the
/// first row are `s_N, ..., s_1`.
pub fn edelman_greene(t: &StandardTableau) -> Result<SortingNetwork> {
    let Some(n) = t.shape().staircase_order() else {
        return invalid(format!("tableau shape {} is not a staircase", t.shape()));
    };
    t.check_standard()?;
    let mut p = staircase_insertion_tableau(n);
    let cells = t.entry_cells();
    let mut word = vec![0; cells.len()];
    for (k, cell) in cells.iter().enumerate().rev() {
        if p[cell.0].len() != cell.1 + 1 {
            return invalid("tableau entries do not remove corners in order");
        }
        word[k] = uninsert(&mut p, cell.0)?;
    }
    SortingNetwork::new(n, word)
}

/// `EG^{-1}(s)`: the recording tableau of Edelman–Greene insertion of `s`.
pub fn edelman_greene_inverse(s: &SortingNetwork) -> StandardTableau {
    let (_, q) = insertion_pair(s.word());
    Tableau::with_shape(YoungDiagram::staircase(s.n()).expect("n >= 2"), q)
        .expect("reduced words of the reverse permutation record a staircase")
}

/// Insertion and recording tableaux of an arbitrary word.
pub fn insertion_pair(word: &[usize]) -> (Vec<Vec<usize>>, Vec<Vec<usize>>) {
    let mut p: Vec<Vec<usize>> = Vec::new();
    let mut q: Vec<Vec<usize>> = Vec::new();
    for (k, &a) in word.iter().enumerate() {
        let row = insert(&mut p, a);
        if row == q.len() {
            q.push(Vec::new());
        }
        q[row].push(k + 1);
    }
    (p, q)
}
