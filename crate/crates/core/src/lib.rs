//! Numerical verification of the log-tangent integral family
//! `∫_0^{π/2} cos(2y) log^k(a tan y) dy` against its Hurwitz zeta closed form,
//! an alternating series and a Hankel-contour integral.

pub mod cli;
pub mod complexfn;
pub mod error;
pub mod hurwitz;
pub mod identities;
pub mod quad;
pub mod render;
pub mod selftest;

pub use error::{Error, Result};
