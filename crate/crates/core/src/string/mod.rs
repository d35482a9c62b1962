//! String constructions: tables `K = {q : Per_{h_T}(Conv(q, C)) ≤ L}` built around a caustic.

mod caustic;
mod construct;
mod function;

pub use caustic::{lazutkin_parameter, lazutkin_of_table, line_tangency_error, verify_caustic, CausticReport};
pub use construct::{string_construct, StringSpec};
pub use function::{string_gradient, string_length, StringFunction};
