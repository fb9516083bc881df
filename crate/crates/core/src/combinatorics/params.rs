use serde::Serialize;

use super::diagram::YoungDiagram;
use super::enumerate::Chain;
use super::network::SortingNetwork;
use super::permutation::Permutation;
use super::tableau::StandardTableau;
use crate::error::{invalid, Result};

/// Parameters shared by staircase tableaux and sorting networks.
///
/// For a tableau `t`: `marks` is the corner vector `cor_t` read bottom-left
/// to top-right, `order` is `σ_t`, `degs` is the out-degree sequence along
/// the growth sequence in Young's lattice below `δ_n`.
/// For a network `s`: `marks` is `last_s`, `order` is `π_s`, and `degs`
/// counts ascents of each intermediate permutation.
#[derive(Debug, Clone, PartialEq, Eq, Serialize)]
pub struct ParamBundle {
    pub marks: Vec<usize>,
    pub order: Permutation,
    /// Increasing rearrangement of `marks`, with a leading `0`.
    pub sorted_marks: Vec<usize>,
    /// Out-degrees at steps `0..N`.
    pub degs: Vec<usize>,
}

impl ParamBundle {
    fn from_parts(marks: Vec<usize>, degs: Vec<usize>) -> Self {
        let order = Permutation::ranking(&marks);
        let mut sorted_marks = Vec::with_capacity(marks.len() + 1);
        sorted_marks.push(0);
        let mut sorted = marks.clone();
        sorted.sort_unstable();
        sorted_marks.extend(sorted);
        Self {
            marks,
            order,
            sorted_marks,
            degs,
        }
    }

    /// Bundle of the growth chain of a staircase tableau, as produced by
    /// walking [`GrowthTree`](super::enumerate::GrowthTree) over `δ_n`.
    pub fn from_growth_chain(n: usize, chain: &Chain) -> Self {
        // Corner (n-k, k) is the last box of row n-k, added when that row
        // reaches length k.
        let mut marks = vec![0; n - 1];
        let mut lens = vec![0usize; n - 1];
        for (step, &row) in chain.choices.iter().enumerate() {
            lens[row] += 1;
            if lens[row] == n - 1 - row {
                marks[n - 2 - row] = step + 1;
            }
        }
        Self::from_parts(marks, chain.degrees.clone())
    }

    /// Bundle of a swap chain from [`SwapTree`](super::enumerate::SwapTree).
    pub fn from_swap_chain(n: usize, chain: &Chain) -> Self {
        let mut marks = vec![0; n - 1];
        for (step, &s) in chain.choices.iter().enumerate() {
            marks[s - 1] = step + 1;
        }
        Self::from_parts(marks, chain.degrees.clone())
    }

    pub fn n(&self) -> usize {
        self.marks.len() + 1
    }

    /// Out-degrees grouped by block: block `k` (0-based) holds the steps from
    /// the `k`-th to just before the `(k+1)`-th smallest mark.
    pub fn blocks(&self) -> Vec<&[usize]> {
        self.sorted_marks
            .windows(2)
            .map(|w| &self.degs[w[0]..w[1]])
            .collect()
    }

    /// Probability `Π degs(j)^{-1}` that a simple random walk follows this chain.
    pub fn path_probability(&self) -> f64 {
        self.degs.iter().map(|&d| 1.0 / d as f64).product()
    }
}

/// Parameters of a standard tableau of staircase shape.
pub fn tableau_params(t: &StandardTableau) -> Result<ParamBundle> {
    let Some(n) = t.shape().staircase_order() else {
        return invalid(format!("tableau shape {} is not a staircase", t.shape()));
    };
    t.check_standard()?;
    let marks: Vec<usize> = (1..n).map(|k| t.rows()[n - k - 1][k - 1]).collect();
    let bound = YoungDiagram::staircase(n)?;
    let mut current = YoungDiagram::empty();
    let mut degs = Vec::with_capacity(bound.size());
    for row in t.growth_rows() {
        degs.push(current.addable_rows_within(&bound).count());
        current.push_box(row);
    }
    Ok(ParamBundle::from_parts(marks, degs))
}

/// Parameters of a sorting network.
pub fn network_params(s: &SortingNetwork) -> ParamBundle {
    let n = s.n();
    let mut marks = vec![0; n - 1];
    for (step, &k) in s.word().iter().enumerate() {
        marks[k - 1] = step + 1;
    }
    let traj = s.trajectory();
    let degs = traj[..traj.len() - 1].iter().map(|p| p.ascents().len()).collect();
    ParamBundle::from_parts(marks, degs)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::combinatorics::enumerate::{enumerate_sorting_networks, GrowthTree, SwapTree, Walk};
    use crate::combinatorics::tableau::Tableau;

    fn perm(v: &[usize]) -> Permutation {
        Permutation::new(v.to_vec()).unwrap()
    }

    #[test]
    fn delta3_tableau() {
        let t = Tableau::from_rows(vec![vec![1, 2], vec![3]]).unwrap();
        let b = tableau_params(&t).unwrap();
        assert_eq!(b.marks, vec![3, 2]);
        assert_eq!(b.order, perm(&[2, 1]));
        assert_eq!(b.degs, vec![1, 2, 1]);
        assert_eq!(b.sorted_marks, vec![0, 2, 3]);
    }

    #[test]
    fn single_box() {
        let t = Tableau::from_rows(vec![vec![1]]).unwrap();
        let b = tableau_params(&t).unwrap();
        assert_eq!((b.marks, b.order, b.degs), (vec![1], perm(&[1]), vec![1]));
        let s = SortingNetwork::new(2, vec![1]).unwrap();
        let b = network_params(&s);
        assert_eq!((b.marks, b.order, b.degs), (vec![1], perm(&[1]), vec![1]));
    }

    #[test]
    fn rejects_bad_tableaux() {
        let square = Tableau::from_rows(vec![vec![1, 2], vec![3, 4]]).unwrap();
        assert!(tableau_params(&square).is_err());
        let bad = Tableau::from_rows(vec![vec![2, 1], vec![3]]).unwrap();
        assert!(tableau_params(&bad).is_err());
    }

    #[test]
    fn delta3_network() {
        let s = SortingNetwork::new(3, vec![1, 2, 1]).unwrap();
        let b = network_params(&s);
        assert_eq!(b.marks, vec![3, 2]);
        assert_eq!(b.order, perm(&[2, 1]));
        assert_eq!(b.degs, vec![2, 1, 1]);
    }

    #[test]
    fn worked_network_of_order_six() {
        let s = SortingNetwork::new(6, vec![5, 1, 2, 4, 1, 3, 5, 4, 2, 1, 5, 3, 2, 4, 3]).unwrap();
        let b = network_params(&s);
        assert_eq!(b.marks, vec![10, 13, 15, 14, 11]);
        assert_eq!(b.order, perm(&[1, 3, 5, 4, 2]));
        assert_eq!(b.degs, vec![5, 4, 3, 3, 3, 2, 3, 2, 2, 3, 2, 1, 2, 1, 1]);
    }

    #[test]
    fn chain_bundles_match_direct_computation() {
        for n in 2..=5 {
            let d = YoungDiagram::staircase(n).unwrap();
            for chain in Walk::new(GrowthTree::new(d.clone())) {
                let t = crate::combinatorics::enumerate::tableau_from_growth(&d, &chain.choices);
                assert_eq!(ParamBundle::from_growth_chain(n, &chain), tableau_params(&t).unwrap());
            }
            for chain in Walk::new(SwapTree::new(n).unwrap()) {
                let s = SortingNetwork::new(n, chain.choices.clone()).unwrap();
                assert_eq!(ParamBundle::from_swap_chain(n, &chain), network_params(&s));
            }
        }
    }

    #[test]
    fn staircase_bundle_invariants() {
        for n in 2..=6 {
            let big_n = n * (n - 1) / 2;
            let d = YoungDiagram::staircase(n).unwrap();
            for chain in Walk::new(GrowthTree::new(d)) {
                let b = ParamBundle::from_growth_chain(n, &chain);
                assert_eq!(*b.sorted_marks.last().unwrap(), big_n);
                assert_eq!(b.degs[0], 1);
                assert_eq!(b.degs[big_n - 1], 1);
                assert!(b.sorted_marks.windows(2).all(|w| w[0] < w[1]));
                check_rank_property(&b);
            }
            for s in enumerate_sorting_networks(n).unwrap() {
                let b = network_params(&s);
                assert_eq!(b.degs[0], n - 1);
                assert_eq!(b.degs[big_n - 1], 1);
                assert!(b.degs.iter().all(|&d| d >= 1));
                assert_eq!(s.trajectory().last().unwrap().ascents().len(), 0);
                check_rank_property(&b);
            }
        }
    }

    fn check_rank_property(b: &ParamBundle) {
        for j in 0..b.marks.len() {
            for k in 0..b.marks.len() {
                assert_eq!(
                    b.order.one_line()[j] < b.order.one_line()[k],
                    b.marks[j] < b.marks[k]
                );
            }
        }
    }

    #[test]
    fn blocks_split_degrees() {
        let t = Tableau::from_rows(vec![vec![1, 2], vec![3]]).unwrap();
        let b = tableau_params(&t).unwrap();
        assert_eq!(b.blocks(), vec![&[1, 2][..], &[1][..]]);
        assert!((b.path_probability() - 0.5).abs() < 1e-15);
    }
}
