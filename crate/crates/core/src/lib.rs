//! Staircase Young tableaux, sorting networks, and the random processes that
//! grow them.
//!
//! The crate covers four layers:
//!
//! * [`combinatorics`]: Young diagrams, tableaux, permutations, sorting
//!   networks, their enumeration, and the per-object parameter bundles
//!   (corner/last-swap vectors, ordering permutations, out-degree sequences).
//! * [`correspondences`] and [`lpp`]: the RSK and Burge maps defined through
//!   Greene-type path maxima, the border-strip sum coefficients, the
//!   Edelman–Greene bijection, and last passage percolation tableaux.
//! * [`symbolic`]: exact rational generating functions `F_n` and `G_n` summed
//!   over staircase tableaux and sorting networks, with an exact equality
//!   check and a modular fast path.
//! * [`simulate`] and [`stats`]: samplers for the oriented swap process,
//!   corner growth and dual LPP, exact joint densities, and two-sample tests.

pub mod combinatorics;
pub mod correspondences;
pub mod error;
pub mod io;
pub mod lpp;
pub mod simulate;
pub mod stats;
pub mod symbolic;

pub use error::{Error, Result};
