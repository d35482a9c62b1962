//! Invariants of convex caustics: the invariant circle in the phase annulus, rotation number,
//! minimal action, perimeter as an annulus integral, and the Lazutkin identity.

mod circle;
mod orbit;
mod report;
mod spline;

pub use circle::{invariant_circle, perimeter_via_circle, InvariantCircle};
pub use orbit::{minimal_action, orbit_statistics, rotation_number, OrbitStatistics};
pub use report::{caustic_invariants, parameter_report, CausticInvariants, ParameterReport};
