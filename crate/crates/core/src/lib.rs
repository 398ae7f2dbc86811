//! Exact computations on Del Pezzo surfaces `X_r`, the blowup of the plane in
//! `3 <= r <= 8` points in general position.
//!
//! The Picard lattice, exceptional curves, roots and rulings are handled as
//! integer vectors; sections of line bundles are plane curves with exact
//! rational coefficients. On top of that sit the Cox ring generators, the
//! quadratic relations coming from rulings and a few rank checks.

pub mod cli;
pub mod cox;
pub mod enumeration;
pub mod error;
pub mod exactalg;
pub mod lattice;
pub mod plane_geometry;
pub mod weyl;

pub use enumeration::{exceptional_curves, roots, rulings, CurveFamily, Ruling};
pub use error::{Error, Result};
pub use lattice::PicClass;
pub use plane_geometry::{random_config, PointConfig};
