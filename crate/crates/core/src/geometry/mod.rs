//! Planar convex-body kernel.

pub mod body;
pub mod curve;
pub mod hausdorff;
pub mod hull;
pub mod line;
pub mod numeric;
pub mod param;
pub mod perimeter;
pub mod sampled;
pub mod tangent;
pub mod vec;

pub use body::{ConvexBody, Shape};
pub use hausdorff::{hausdorff_distance, support_excess};
pub use line::OrientedLine;
pub use param::{BoundaryParam, BoundarySample};
pub use perimeter::{minkowski_perimeter, mixed_area, mixed_area_perimeter};
pub use sampled::SampledBody;
pub use tangent::{tangent_points, TangentPair};
pub use vec::{v2, V2};
