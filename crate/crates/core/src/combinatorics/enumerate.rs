//! Lazy depth-first enumeration of standard tableaux and sorting networks.
//!
//! Both families are maximal chains in a graded poset (Young's lattice below
//! a shape, and the weak order on `S_n`), so one walker serves both. Leaves
//! come out in lexicographic order of the choice sequence, and the walk can
//! be restricted to the subtree under a fixed prefix so that disjoint shards
//! are enumerated independently.

use super::diagram::YoungDiagram;
use super::network::SortingNetwork;
use super::permutation::Permutation;
use super::tableau::StandardTableau;
use crate::error::{invalid, Result};

/// A tree of choices explored depth first by [`Walk`].
pub trait ChoiceTree {
    /// Choices available from the current state, in canonical (increasing) order.
    fn choices(&self, out: &mut Vec<usize>);
    fn push(&mut self, choice: usize);
    fn pop(&mut self, choice: usize);
    /// Length of every maximal chain.
    fn depth(&self) -> usize;
}

/// One maximal chain: the choice made at each step and the number of
/// choices that were available there (the out-degree of the visited vertex).
#[derive(Debug, Clone, PartialEq, Eq)]
pub struct Chain {
    pub choices: Vec<usize>,
    pub degrees: Vec<usize>,
}

struct Frame {
    candidates: Vec<usize>,
    next: usize,
}

pub struct Walk<T: ChoiceTree> {
    tree: T,
    limit: usize,
    path: Vec<usize>,
    degrees: Vec<usize>,
    frames: Vec<Frame>,
    done: bool,
}

impl<T: ChoiceTree> Walk<T> {
    pub fn new(tree: T) -> Self {
        Self::with_prefix(tree, &[]).expect("empty prefix is always valid")
    }

    /// Walks only chains starting with `prefix`.
    pub fn with_prefix(tree: T, prefix: &[usize]) -> Result<Self> {
        let limit = tree.depth();
        Self::build(tree, prefix, limit)
    }

    fn build(mut tree: T, prefix: &[usize], limit: usize) -> Result<Self> {
        if prefix.len() > limit {
            return invalid("prefix longer than the chains being enumerated");
        }
        let mut degrees = Vec::with_capacity(limit);
        let mut buf = Vec::new();
        for &c in prefix {
            buf.clear();
            tree.choices(&mut buf);
            if !buf.contains(&c) {
                return invalid(format!("prefix choice {c} is not available"));
            }
            degrees.push(buf.len());
            tree.push(c);
        }
        let mut walk = Self {
            tree,
            limit,
            path: prefix.to_vec(),
            degrees,
            frames: Vec::new(),
            done: false,
        };
        if !walk.descend() {
            walk.advance();
        }
        Ok(walk)
    }

    /// Extends the current path with first choices down to the limit.
    /// Returns false on a dead end.
    fn descend(&mut self) -> bool {
        while self.path.len() < self.limit {
            let mut candidates = Vec::new();
            self.tree.choices(&mut candidates);
            if candidates.is_empty() {
                return false;
            }
            let c = candidates[0];
            self.degrees.push(candidates.len());
            self.tree.push(c);
            self.path.push(c);
            self.frames.push(Frame { candidates, next: 1 });
        }
        true
    }

    /// Moves to the next leaf, or marks the walk finished.
    fn advance(&mut self) {
        loop {
            let Some(frame) = self.frames.last_mut() else {
                self.done = true;
                return;
            };
            let old = self.path.pop().expect("frame without path entry");
            self.tree.pop(old);
            if frame.next < frame.candidates.len() {
                let c = frame.candidates[frame.next];
                frame.next += 1;
                self.tree.push(c);
                self.path.push(c);
                if self.descend() {
                    return;
                }
            } else {
                self.frames.pop();
                self.degrees.pop();
            }
        }
    }
}

impl<T: ChoiceTree> Iterator for Walk<T> {
    type Item = Chain;

    fn next(&mut self) -> Option<Chain> {
        if self.done {
            return None;
        }
        let chain = Chain {
            choices: self.path.clone(),
            degrees: self.degrees.clone(),
        };
        self.advance();
        Some(chain)
    }
}

/// All prefixes of length `depth`, in walk order. Walking each prefix with
/// [`Walk::with_prefix`] partitions the full enumeration.
pub fn shard_prefixes<T: ChoiceTree>(tree: T, depth: usize) -> Result<Vec<Vec<usize>>> {
    let depth = depth.min(tree.depth());
    Ok(Walk::build(tree, &[], depth)?.map(|c| c.choices).collect())
}

/// Box-addition tree of Young diagrams inside a fixed shape. Choices are row indices.
#[derive(Debug, Clone)]
pub struct GrowthTree {
    bound: YoungDiagram,
    current: YoungDiagram,
}

impl GrowthTree {
    pub fn new(bound: YoungDiagram) -> Self {
        Self {
            bound,
            current: YoungDiagram::empty(),
        }
    }
}

impl ChoiceTree for GrowthTree {
    fn choices(&self, out: &mut Vec<usize>) {
        out.extend(self.current.addable_rows_within(&self.bound));
    }

    fn push(&mut self, row: usize) {
        self.current.push_box(row);
    }

    fn pop(&mut self, row: usize) {
        self.current.pop_box(row);
    }

    fn depth(&self) -> usize {
        self.bound.size()
    }
}

/// Ascent-swap tree from `id_n` in the weak order. Choices are positions.
#[derive(Debug, Clone)]
pub struct SwapTree {
    current: Permutation,
}

impl SwapTree {
    pub fn new(n: usize) -> Result<Self> {
        if n < 2 {
            return invalid(format!("sorting network order must be at least 2, got {n}"));
        }
        Ok(Self {
            current: Permutation::identity(n),
        })
    }
}

impl ChoiceTree for SwapTree {
    fn choices(&self, out: &mut Vec<usize>) {
        out.extend(self.current.ascents());
    }

    fn push(&mut self, j: usize) {
        self.current.swap_positions(j);
    }

    fn pop(&mut self, j: usize) {
        self.current.swap_positions(j);
    }

    fn depth(&self) -> usize {
        let n = self.current.len();
        n * (n - 1) / 2
    }
}

/// Builds the standard tableau whose growth sequence adds boxes in `rows`.
pub fn tableau_from_growth(shape: &YoungDiagram, rows: &[usize]) -> StandardTableau {
    let mut out: Vec<Vec<usize>> = vec![Vec::new(); shape.num_rows()];
    for (k, &r) in rows.iter().enumerate() {
        out[r].push(k + 1);
    }
    StandardTableau::from_rows(out).expect("growth sequence yields a diagram")
}

/// Every standard tableau of `shape`, each exactly once, lazily.
pub fn enumerate_syt(shape: &YoungDiagram) -> impl Iterator<Item = StandardTableau> {
    let shape = shape.clone();
    Walk::new(GrowthTree::new(shape.clone())).map(move |c| tableau_from_growth(&shape, &c.choices))
}

/// Every sorting network of order `n`, each exactly once, lazily.
pub fn enumerate_sorting_networks(n: usize) -> Result<impl Iterator<Item = SortingNetwork>> {
    Ok(Walk::new(SwapTree::new(n)?).map(move |c| SortingNetwork::new_unchecked(n, c.choices)))
}
