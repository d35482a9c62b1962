use super::body::{ConvexBody, Shape};
use super::line::OrientedLine;
use super::numeric::{brent_known, golden_min};
use super::vec::{rot90, rot_m90, unit_at, V2};
use crate::error::{Error, Result};
use std::f64::consts::TAU;

/// Tangency points seen from an exterior point: `C` lies to the left of `q → e` and to the
/// right of `q → b`.
#[derive(Debug, Clone, Copy)]
pub struct TangentPair {
    pub e: V2,
    pub b: V2,
    pub positive_line: OrientedLine,
    pub negative_line: OrientedLine,
}

/// Vertex indices `(e, b)` of the illuminated chain of a polygon seen from `q`.
pub fn polygon_tangent_indices(vertices: &[V2], q: V2) -> Result<(usize, usize)> {
    let n = vertices.len();
    if n == 1 {
        if q == vertices[0] {
            return Err(Error::PointInsideCaustic(q.x, q.y));
        }
        return Ok((0, 0));
    }
    let lit: Vec<bool> = (0..n)
        .map(|i| (q - vertices[i]).dot(&rot_m90(vertices[(i + 1) % n] - vertices[i])) > 0.0)
        .collect();
    if !lit.iter().any(|&x| x) {
        if n == 2 {
            let (a, b) = (vertices[0], vertices[1]);
            let t = (q - a).dot(&(b - a)) / (b - a).norm_squared();
            if (0.0..=1.0).contains(&t) {
                return Err(Error::PointInsideCaustic(q.x, q.y));
            }
            let k = if t < 0.0 { 0 } else { 1 };
            return Ok((k, k));
        }
        return Err(Error::PointInsideCaustic(q.x, q.y));
    }
    let mut b = None;
    let mut e = None;
    for i in 0..n {
        let prev = lit[(i + n - 1) % n];
        if lit[i] && !prev {
            b = Some(i);
        }
        if lit[i] && !lit[(i + 1) % n] {
            e = Some((i + 1) % n);
        }
    }
    match (e, b) {
        (Some(e), Some(b)) => Ok((e, b)),
        _ => Err(Error::PointInsideCaustic(q.x, q.y)),
    }
}

fn make_pair(q: V2, e: V2, b: V2) -> TangentPair {
    TangentPair {
        e,
        b,
        positive_line: OrientedLine::new(q, e - q),
        negative_line: OrientedLine::new(q, b - q),
    }
}

fn circle_tangents(y: V2) -> (V2, V2) {
    let d = y.norm();
    let c = 1.0 / d;
    let s = (1.0 - c * c).max(0.0).sqrt();
    let u = y / d;
    let w = rot90(u);
    // e has the center on the left of y → e
    (c * u + s * w, c * u - s * w)
}

/// Positive and negative tangency points of `C` seen from the exterior point `q`.
pub fn tangent_points(c: &ConvexBody, q: V2) -> Result<TangentPair> {
    match c.shape() {
        Shape::Polygon { vertices } => {
            let (ie, ib) = polygon_tangent_indices(vertices, q)?;
            Ok(make_pair(q, vertices[ie], vertices[ib]))
        }
        Shape::Disk { center, radius } => {
            let y = (q - center) / *radius;
            if y.norm() <= 1.0 + 1e-12 {
                return Err(Error::PointInsideCaustic(q.x, q.y));
            }
            let (e, b) = circle_tangents(y);
            Ok(make_pair(q, center + e * *radius, center + b * *radius))
        }
        Shape::Ellipse { center, shape, inverse } => {
            let y = inverse * (q - center);
            if y.norm() <= 1.0 + 1e-12 {
                return Err(Error::PointInsideCaustic(q.x, q.y));
            }
            let (e, b) = circle_tangents(y);
            Ok(make_pair(q, center + shape * e, center + shape * b))
        }
        _ => generic_tangents(c, q),
    }
}

fn generic_tangents(c: &ConvexBody, q: V2) -> Result<TangentPair> {
    if c.gauge_about_center(q) <= 1.0 + 1e-12 {
        return Err(Error::PointInsideCaustic(q.x, q.y));
    }
    let f = |phi: f64| {
        let u = unit_at(phi);
        c.h(u) - q.dot(&u)
    };
    let m = 256;
    let step = TAU / m as f64;
    let vals: Vec<f64> = (0..m).map(|j| f(j as f64 * step)).collect();
    let (jmin, _) = vals
        .iter()
        .enumerate()
        .fold((0, f64::INFINITY), |acc, (j, &v)| if v < acc.1 { (j, v) } else { acc });
    let (phi_min, fmin) = if vals[jmin] < 0.0 {
        (jmin as f64 * step, vals[jmin])
    } else {
        golden_min(f, (jmin as f64 - 1.0) * step, (jmin as f64 + 1.0) * step, 1e-14)
    };
    if fmin >= 0.0 {
        return Err(Error::PointInsideCaustic(q.x, q.y));
    }
    // walk away from the minimum in both directions to bracket the two roots
    let bracket = |dir: f64| -> Option<(f64, f64, f64, f64)> {
        let mut a = phi_min;
        let mut fa = fmin;
        for k in 1..=m {
            let b = phi_min + dir * k as f64 * step;
            let fb = f(b);
            if fb >= 0.0 {
                return Some((a, b, fa, fb));
            }
            a = b;
            fa = fb;
        }
        None
    };
    let (a1, b1, fa1, fb1) = bracket(1.0).ok_or_else(|| Error::Numerical("no tangent bracket".into()))?;
    let (a2, b2, fa2, fb2) = bracket(-1.0).ok_or_else(|| Error::Numerical("no tangent bracket".into()))?;
    let phi_e = brent_known(f, a1, b1, fa1, fb1, 1e-15).unwrap();
    let phi_b = brent_known(f, b2, a2, fb2, fa2, 1e-15).unwrap();
    let e = c.support_point(unit_at(phi_e));
    let b = c.support_point(unit_at(phi_b));
    Ok(make_pair(q, e, b))
}
