use crate::billiard::{alpha, BilliardConfig, Side};
use crate::error::Result;
use crate::geometry::vec::{cross, rot90, v2};
use crate::geometry::{tangent_points, ConvexBody, OrientedLine, V2};
use rayon::prelude::*;

/// Candidate dual caustic for any geometry: the intersection of the half-planes to the right of
/// `α(ℓ)` over positive tangent lines `ℓ` of `C` from `samples` points of `∂K`.
///
/// A true dual touches every one of these lines; [`crate::duality::verify_duality`] decides.
/// `None` when the half-planes have empty intersection, so that no dual exists.
pub fn dual_candidate(config: &BilliardConfig, c: &ConvexBody, samples: usize) -> Result<Option<ConvexBody>> {
    let lines: Vec<OrientedLine> = config
        .param_k()
        .uniform_samples(samples.max(3))
        .par_iter()
        .map(|(_, s)| {
            let tp = tangent_points(c, s.point)?;
            alpha(config, &OrientedLine::new(s.point, tp.e - s.point), Side::K)
        })
        .collect::<Result<_>>()?;
    let r = 4.0 * config.geometry().max_radius();
    let mut poly = vec![v2(-r, -r), v2(r, -r), v2(r, r), v2(-r, r)];
    for l in &lines {
        poly = clip_right(&poly, l);
        if poly.len() < 3 {
            break;
        }
    }
    let pts = dedup(poly);
    Ok(match pts.len() {
        0 => None,
        1 => Some(ConvexBody::point(pts[0])),
        2 => Some(ConvexBody::segment(pts[0], pts[1])),
        _ => Some(ConvexBody::hull_of(&pts)?),
    })
}

/// Keeps the part of a counter-clockwise convex polygon to the right of `l`.
fn clip_right(poly: &[V2], l: &OrientedLine) -> Vec<V2> {
    let nu = rot90(l.dir);
    let off = l.base.dot(&nu);
    let side = |p: &V2| p.dot(&nu) - off;
    let mut out = Vec::with_capacity(poly.len() + 1);
    for i in 0..poly.len() {
        let a = poly[i];
        let b = poly[(i + 1) % poly.len()];
        let (sa, sb) = (side(&a), side(&b));
        if sa <= 0.0 {
            out.push(a);
        }
        if (sa < 0.0 && sb > 0.0) || (sa > 0.0 && sb < 0.0) {
            out.push(a + (b - a) * (sa / (sa - sb)));
        }
    }
    out
}

fn dedup(poly: Vec<V2>) -> Vec<V2> {
    let scale = poly.iter().map(|p| p.norm()).fold(1e-300, f64::max);
    let mut out: Vec<V2> = Vec::with_capacity(poly.len());
    for p in poly {
        if out.last().map_or(true, |q: &V2| (p - q).norm() > 1e-12 * scale) {
            out.push(p);
        }
    }
    while out.len() > 1 && (out[0] - out[out.len() - 1]).norm() <= 1e-12 * scale {
        out.pop();
    }
    if out.len() >= 3 {
        let area: f64 = (0..out.len()).map(|i| cross(out[i], out[(i + 1) % out.len()])).sum();
        if area.abs() <= 1e-12 * scale * scale {
            // collapsed to a segment: keep its extreme points
            let d = out[1] - out[0];
            let (lo, hi) = out.iter().fold((out[0], out[0]), |(lo, hi), p| {
                (if p.dot(&d) < lo.dot(&d) { *p } else { lo }, if p.dot(&d) > hi.dot(&d) { *p } else { hi })
            });
            return vec![lo, hi];
        }
    }
    out
}
