//! Dual caustics: closed forms for ellipses, the Euclidean smooth construction
//! `w(q) = (e(q) − b(q))/L(q)`, the polygonal construction, a half-plane candidate for any
//! geometry, and verification through `α`.

mod confocal;
mod envelope;
mod polygon;
mod smooth;
mod verify;

pub use envelope::dual_candidate;
pub use confocal::{confocal_caustic, confocal_dual, discriminant_pair};
pub use polygon::{dual_caustic_polygon, PolygonDual};
pub use smooth::{dual_caustic_smooth, dual_curve, tangency_data, tangency_derivatives, TangencyData};
pub use verify::{verify_duality, DualityOptions, DualityReport, Verdict};
