//! Spectral analysis of the Laplace operator `Δ = (x + x⁻¹ + y + y⁻¹)/4` on the
//! discrete Heisenberg group and its finite quotients `H_N`.

pub mod error;
pub mod group;
pub mod reps;
pub mod eigen;
pub mod charpoly;
pub mod butterfly;
pub mod measure;
pub mod verify;
pub mod cli;

pub use error::{Error, Result};
