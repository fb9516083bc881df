//! Exact multivariate generating functions over tableaux and networks.

pub mod factors;
pub mod genfun;
pub mod modp;
pub mod poly;
pub mod rational;

pub use factors::LinearFactorProduct;
pub use genfun::{
    build, build_f, build_g, bucket_counts, collect_buckets, equal, stream_eval_mod_p, verify_modular,
    BuildEvent, BuildOptions, Comparison, GeneratingFunctionVector, ModularCheck, Side, Witness, MAX_N,
};
pub use poly::{Monomial, SparsePolynomial};
pub use rational::{generating_denominator, generating_factor, RationalComponent};
