//! Densities and statistical comparisons.

pub mod compare;
pub mod density;
pub mod hypoexp;
pub mod hypothesis;

pub use compare::{compare_processes, compare_samples, derived_seed, trajectory_gof, ComparisonReport};
pub use density::{characteristic_product, joint_density, DensityModel, DensitySpec, MAX_DENSITY_N};
pub use hypoexp::hypoexp_density;
pub use hypothesis::{chi_square_gof, chi_square_two_sample, ks_critical_value, ks_two_sample, ChiSquareResult, KsResult};
