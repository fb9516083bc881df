//! Partitions, tableaux, permutations and sorting networks.

pub mod diagram;
pub mod enumerate;
pub mod network;
pub mod params;
pub mod permutation;
pub mod tableau;

pub use diagram::{Cell, YoungDiagram};
pub use enumerate::{
    enumerate_sorting_networks, enumerate_syt, shard_prefixes, tableau_from_growth, Chain, ChoiceTree, GrowthTree, SwapTree,
    Walk,
};
pub use network::SortingNetwork;
pub use params::{network_params, tableau_params, ParamBundle};
pub use permutation::{ascent_positions, Permutation};
pub use tableau::{StandardTableau, Tableau};

/// Number of standard tableaux of `shape`.
pub fn hook_count(shape: &YoungDiagram) -> num_bigint::BigUint {
    shape.hook_count()
}

/// The staircase `δ_n = (n-1, ..., 1)`.
pub fn staircase(n: usize) -> crate::Result<YoungDiagram> {
    YoungDiagram::staircase(n)
}
