use nalgebra::Vector2;
use std::f64::consts::TAU;

pub type V2 = Vector2<f64>;

#[inline]
pub fn v2(x: f64, y: f64) -> V2 {
    V2::new(x, y)
}

/// Counter-clockwise rotation by a right angle.
#[inline]
pub fn rot90(v: V2) -> V2 {
    V2::new(-v.y, v.x)
}

/// Clockwise rotation by a right angle.
#[inline]
pub fn rot_m90(v: V2) -> V2 {
    V2::new(v.y, -v.x)
}

#[inline]
pub fn cross(a: V2, b: V2) -> f64 {
    a.x * b.y - a.y * b.x
}

#[inline]
pub fn unit_at(phi: f64) -> V2 {
    V2::new(phi.cos(), phi.sin())
}

#[inline]
pub fn angle_of(v: V2) -> f64 {
    v.y.atan2(v.x)
}

/// Representative of `x` in `[lo, lo + period)`.
#[inline]
pub fn wrap_from(x: f64, lo: f64, period: f64) -> f64 {
    let mut y = (x - lo).rem_euclid(period) + lo;
    if y >= lo + period {
        y -= period;
    }
    y
}

/// Angle in `[lo, lo + 2π)`.
#[inline]
pub fn wrap_angle(x: f64, lo: f64) -> f64 {
    wrap_from(x, lo, TAU)
}

pub(crate) fn is_finite(v: V2) -> bool {
    v.x.is_finite() && v.y.is_finite()
}
