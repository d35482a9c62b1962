//! The discrete `(K, T)`-billiard: line space, the maps Ψ, Ψ² and α, annulus coordinates,
//! the generating function and trajectory iteration.

pub mod annulus;
pub mod config;
pub mod maps;
pub mod trajectory;

pub use crate::geometry::OrientedLine;
pub use annulus::{annulus_coords, generating_function, line_from_annulus, twist_map, AnnulusPoint};
pub use config::BilliardConfig;
pub use maps::{alpha, billiard_map, chord, next_impact, psi, Side};
pub use trajectory::{iterate_trajectory, TrajectoryRecord};
