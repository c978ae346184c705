//! Simulation and verification laboratory for fractional-type symmetric
//! infinitely divisible random fields.
//!
//! The crate synthesizes fields X(t) = \int g(t,s) L(ds) on regular grids,
//! computes power-variation statistics of their rectangular increments,
//! and independently evaluates or samples every first-order limit object
//! (ergodic constants, Poisson-integral limits, derivative-field limits)
//! so the limit theory and the derived estimators can be checked
//! empirically.

pub mod bessel;
pub mod error;
pub mod geom;
pub mod grid;
pub mod harness;
pub mod io;
pub mod kernels;
pub mod lattice;
pub mod levy;
pub mod limits;
pub mod quad;
pub mod rng;
pub mod sim;
pub mod stats;

pub use error::{Error, Result};
pub use rng::RandomStream;
