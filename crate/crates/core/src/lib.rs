//! Exact computations for reduced Wakimoto dg-modules in the affine A1 Hecke category:
//! two-colored quantum numbers, the reduced dg-algebra and its antispherical modules,
//! cohomology over specializations, the closed-form cohomology prediction, shrubbery
//! combinatorics, and the characteristic-zero minimal complexes.

pub mod charzero;
pub mod cli;
pub mod complex;
pub mod dg;
pub mod error;
pub mod homology;
pub mod predict;
pub mod qnum;
pub mod reduce;
pub mod ring;
pub mod shrub;

pub use error::{Error, Result};
