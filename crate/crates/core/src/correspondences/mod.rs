//! RSK and Burge maps via Greene invariants, the border-strip sum
//! coefficients, and the Edelman–Greene bijection.

pub mod eg;
pub mod greene;
pub mod omega;
pub mod rsk;

pub use eg::{edelman_greene, edelman_greene_inverse};
pub use greene::{greene_invariant, Weight};
pub use omega::{omega, BorderClass, BorderStrip, OmegaTableau};
pub use rsk::{burge, rsk};
