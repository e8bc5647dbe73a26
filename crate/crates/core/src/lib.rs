//! Exact arithmetic for iterated Ore and skew Laurent extensions.
//!
//! Modules build on each other: [`exact`] coefficients, [`abelian`] groups,
//! [`tower`] algebras, [`endo`] maps, and [`eigen`] weight theory.

pub mod abelian;
pub mod builtins;
pub mod eigen;
pub mod endo;
pub mod error;
pub mod exact;
pub mod tower;
pub mod verify;

pub use error::{Error, Result};
