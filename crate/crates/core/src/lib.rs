//! Numerical laboratory for planar Minkowski billiards.
//!
//! A table `K` and a geometry body `T` (both convex, usually centrally symmetric) define a
//! billiard in which chord lengths are measured by the support function `h_T`. The crate
//! provides the convex-geometry kernel, the billiard maps, string constructions of tables
//! from caustics, dual caustics, the caustic invariants (rotation number, minimal action,
//! perimeter, Lazutkin parameter) and a reproduction of the smoothed-ℓ1 non-existence example.

pub mod billiard;
pub mod cli;
pub mod counterexample;
pub mod duality;
pub mod error;
pub mod geometry;
pub mod invariants;
pub mod io;
pub mod string;

pub use error::{Error, Result};
pub use geometry::{ConvexBody, OrientedLine, V2};
