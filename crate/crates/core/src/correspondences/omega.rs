use serde::Serialize;

use crate::combinatorics::{Cell, Tableau, YoungDiagram};

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
pub enum BorderClass {
    Corner,
    /// Border box `(m_{c+1}, n_c)` where consecutive corner rectangles overlap.
    InnerCorner,
    Plain,
}

/// Border boxes of a shape, bottom-left to top-right, with their class.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct BorderStrip {
    pub cells: Vec<(Cell, BorderClass)>,
}

impl BorderStrip {
    pub fn of(shape: &YoungDiagram) -> Self {
        let corners = shape.corners();
        let inner: Vec<Cell> = corners.windows(2).map(|w| Cell(w[1].0, w[0].1)).collect();
        let cells = shape
            .border_cells()
            .into_iter()
            .map(|c| {
                let class = if corners.contains(&c) {
                    BorderClass::Corner
                } else if inner.contains(&c) {
                    BorderClass::InnerCorner
                } else {
                    BorderClass::Plain
                };
                (c, class)
            })
            .collect();
        Self { cells }
    }

    pub fn corners(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells.iter().filter(|(_, k)| *k == BorderClass::Corner).map(|(c, _)| *c)
    }

    pub fn inner_corners(&self) -> impl Iterator<Item = Cell> + '_ {
        self.cells
            .iter()
            .filter(|(_, k)| *k == BorderClass::InnerCorner)
            .map(|(c, _)| *c)
    }
}

pub type OmegaTableau = Tableau<i8>;

/// Coefficients `ω ∈ {-1, 0, 1}` with `Σ ω·rsk(x) = Σ x = Σ ω·burge(x)`.
///
/// The shape is the union of its corner rectangles; consecutive ones overlap
/// in the rectangle of an inner corner. Each rectangle sum is the full
/// diagonal sum of the RSK (or Burge) output ending at that border box, so
/// inclusion–exclusion puts `+1` on corner diagonals and `-1` on inner-corner
/// diagonals.
pub fn omega(shape: &YoungDiagram) -> OmegaTableau {
    let strip = BorderStrip::of(shape);
    let mut w = Tableau::from_fn(shape, |_| 0i8);
    for (border, class) in &strip.cells {
        let sign = match class {
            BorderClass::Corner => 1,
            BorderClass::InnerCorner => -1,
            BorderClass::Plain => continue,
        };
        for step in 0..=border.0.min(border.1) {
            w.set(Cell(border.0 - step, border.1 - step), sign);
        }
    }
    w
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn delta4_coefficients() {
        let w = omega(&YoungDiagram::staircase(4).unwrap());
        assert_eq!(w.into_rows(), vec![vec![1, -1, 1], vec![-1, 1], vec![1]]);
    }

    #[test]
    fn square_and_single_box() {
        let w = omega(&YoungDiagram::new(vec![2, 2]).unwrap());
        assert_eq!(w.into_rows(), vec![vec![1, 0], vec![0, 1]]);
        let w = omega(&YoungDiagram::new(vec![1]).unwrap());
        assert_eq!(w.into_rows(), vec![vec![1]]);
    }

    #[test]
    fn strip_classes() {
        let strip = BorderStrip::of(&YoungDiagram::new(vec![3, 1]).unwrap());
        assert_eq!(
            strip.cells,
            vec![
                (Cell(1, 0), BorderClass::Corner),
                (Cell(0, 0), BorderClass::InnerCorner),
                (Cell(0, 1), BorderClass::Plain),
                (Cell(0, 2), BorderClass::Corner),
            ]
        );
    }

    /// Inclusion–exclusion check without any correspondence: weighting each
    /// box by the number of corner rectangles minus inner-corner rectangles
    /// containing it gives 1 everywhere.
    #[test]
    fn rectangles_cover_each_box_once() {
        for shape in YoungDiagram::staircase(7).unwrap().subdiagrams() {
            let strip = BorderStrip::of(&shape);
            for c in shape.cells() {
                let inside = |r: &Cell| c.0 <= r.0 && c.1 <= r.1;
                let cover = strip.corners().filter(inside).count() as i64
                    - strip.inner_corners().filter(inside).count() as i64;
                assert_eq!(cover, 1, "shape {shape} cell {c:?}");
            }
        }
    }
}
