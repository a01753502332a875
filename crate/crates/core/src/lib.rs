pub mod cli;
pub mod congruence;
pub mod douglas;
pub mod error;
pub mod harness;
pub mod matrix;
pub mod module;
pub mod projections;
pub mod spectral;
pub mod sylvester;
pub mod tolerance;

#[cfg(test)]
pub(crate) mod testutil;

pub use error::{Error, Result};
pub use matrix::{c64, Complex64, ComplexMatrix};
pub use tolerance::ToleranceConfig;
