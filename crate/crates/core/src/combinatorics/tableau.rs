use std::ops::Index;

use serde::{Deserialize, Serialize};

use super::diagram::{Cell, YoungDiagram};
use crate::error::{invalid, Result};

/// A value per box of a Young diagram.
///
/// The entry type is a parameter: `u64` or `BigInt` for exact work, `f64`
/// for simulation.
#[derive(Debug, Clone, PartialEq, Eq, Hash, Serialize, Deserialize)]
#[serde(try_from = "TableauRepr<T>")]
pub struct Tableau<T> {
    shape: YoungDiagram,
    rows: Vec<Vec<T>>,
}

#[derive(Deserialize)]
struct TableauRepr<T> {
    #[serde(default)]
    shape: Option<YoungDiagram>,
    rows: Vec<Vec<T>>,
}

impl<T> TryFrom<TableauRepr<T>> for Tableau<T> {
    type Error = crate::Error;

    fn try_from(r: TableauRepr<T>) -> Result<Self> {
        match r.shape {
            Some(shape) => Self::with_shape(shape, r.rows),
            None => Self::from_rows(r.rows),
        }
    }
}

/// Tableau with entries `1..=N`, strictly increasing along rows and columns.
pub type StandardTableau = Tableau<usize>;

impl<T> Tableau<T> {
    pub fn from_rows(rows: Vec<Vec<T>>) -> Result<Self> {
        let shape = YoungDiagram::new(rows.iter().map(Vec::len).collect())?;
        if rows.iter().any(Vec::is_empty) {
            return invalid("tableau has an empty row");
        }
        Ok(Self { shape, rows })
    }

    /// Like [`from_rows`](Self::from_rows) but also checks the rows against a declared shape.
    pub fn with_shape(shape: YoungDiagram, rows: Vec<Vec<T>>) -> Result<Self> {
        let t = Self::from_rows(rows)?;
        if t.shape != shape {
            return invalid(format!("rows have shape {} but shape {} was declared", t.shape, shape));
        }
        Ok(t)
    }

    pub fn from_fn(shape: &YoungDiagram, mut f: impl FnMut(Cell) -> T) -> Self {
        let rows = shape
            .rows()
            .iter()
            .enumerate()
            .map(|(i, &len)| (0..len).map(|j| f(Cell(i, j))).collect())
            .collect();
        Self {
            shape: shape.clone(),
            rows,
        }
    }

    pub fn shape(&self) -> &YoungDiagram {
        &self.shape
    }

    pub fn rows(&self) -> &[Vec<T>] {
        &self.rows
    }

    pub fn into_rows(self) -> Vec<Vec<T>> {
        self.rows
    }

    pub fn get(&self, c: Cell) -> Option<&T> {
        self.rows.get(c.0).and_then(|r| r.get(c.1))
    }

    pub fn set(&mut self, c: Cell, value: T) {
        self.rows[c.0][c.1] = value;
    }

    pub fn iter(&self) -> impl Iterator<Item = (Cell, &T)> + '_ {
        self.rows
            .iter()
            .enumerate()
            .flat_map(|(i, r)| r.iter().enumerate().map(move |(j, v)| (Cell(i, j), v)))
    }

    pub fn map<U>(&self, mut f: impl FnMut(&T) -> U) -> Tableau<U> {
        Tableau {
            shape: self.shape.clone(),
            rows: self.rows.iter().map(|r| r.iter().map(&mut f).collect()).collect(),
        }
    }
}

impl<T: PartialOrd> Tableau<T> {
    /// Weakly increasing along rows and columns.
    pub fn is_interlacing(&self) -> bool {
        self.iter().all(|(c, v)| {
            let left_ok = c.1 == 0 || self.rows[c.0][c.1 - 1] <= *v;
            let up_ok = c.0 == 0 || self.rows[c.0 - 1][c.1] <= *v;
            left_ok && up_ok
        })
    }
}

impl<T> Index<Cell> for Tableau<T> {
    type Output = T;

    fn index(&self, c: Cell) -> &T {
        &self.rows[c.0][c.1]
    }
}

impl StandardTableau {
    pub fn is_standard(&self) -> bool {
        let n = self.shape.size();
        let mut seen = vec![false; n + 1];
        for (_, &v) in self.iter() {
            if v == 0 || v > n || seen[v] {
                return false;
            }
            seen[v] = true;
        }
        self.iter().all(|(c, &v)| {
            (c.1 == 0 || self.rows[c.0][c.1 - 1] < v) && (c.0 == 0 || self.rows[c.0 - 1][c.1] < v)
        })
    }

    pub fn check_standard(&self) -> Result<()> {
        if self.is_standard() {
            Ok(())
        } else {
            invalid(format!("{:?} is not a standard Young tableau", self.rows))
        }
    }

    /// Position of each entry: `cells[k - 1]` holds the box containing `k`.
    pub fn entry_cells(&self) -> Vec<Cell> {
        let mut cells = vec![Cell(0, 0); self.shape.size()];
        for (c, &v) in self.iter() {
            cells[v - 1] = c;
        }
        cells
    }

    /// Rows of box indices added at each step, i.e. the growth sequence
    /// `∅ ↗ λ(1) ↗ ... ↗ shape` encoded by the row receiving each new box.
    pub fn growth_rows(&self) -> Vec<usize> {
        self.entry_cells().into_iter().map(Cell::row).collect()
    }

    /// Row reading word, rows concatenated top to bottom.
    pub fn row_word(&self) -> Vec<usize> {
        self.rows.iter().flatten().copied().collect()
    }
}
