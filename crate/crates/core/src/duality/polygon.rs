use crate::error::{Error, Result};
use crate::geometry::tangent::polygon_tangent_indices;
use crate::geometry::vec::cross;
use crate::geometry::{BoundaryParam, ConvexBody, V2};

/// Dual of a polygonal caustic, with the arc bookkeeping that produced it.
#[derive(Debug, Clone)]
pub struct PolygonDual {
    pub body: ConvexBody,
    /// Dual vertices `w_i = (e_i − b_i)/L_i`, counter-clockwise.
    pub vertices: Vec<V2>,
    /// `q_i`: the point of `∂K` where arc `i` begins.
    pub junctions: Vec<V2>,
    /// Vertex indices `(e_i, b_i)` of the caustic on arc `i`.
    pub pairs: Vec<(usize, usize)>,
    pub lengths: Vec<f64>,
}

const WALK_SAMPLES: usize = 4096;

/// Dual caustic of a convex polygon `C` (a Euclidean caustic of `K`).
///
/// `∂K` is cut into maximal arcs on which the tangency vertices `(e, b)` are constant; each arc
/// contributes the vertex `w_i = (e_i − b_i)/L_i`. Every junction is checked against the edge law
/// `(w_i − w_{i−1})·n_K(q_i) < 0` and `cross(w_{i−1}, w_i) > 0`.
pub fn dual_caustic_polygon(k: &ConvexBody, c: &ConvexBody) -> Result<PolygonDual> {
    let verts = c
        .vertices()
        .filter(|v| v.len() >= 2)
        .ok_or_else(|| Error::UnsupportedCaustic("polygon dual needs a polygon or segment caustic".into()))?
        .to_vec();
    let param = BoundaryParam::new(k, &ConvexBody::disk(1.0)?, 1024)?;
    let total = param.total();
    let state = |t: f64| polygon_tangent_indices(&verts, param.point(t));
    // offset grid: t = 0 sits on a symmetry axis, where e = b for a segment caustic
    let ts: Vec<f64> = (0..WALK_SAMPLES).map(|j| total * (j as f64 + 0.371) / WALK_SAMPLES as f64).collect();
    let states = ts.iter().map(|&t| state(t)).collect::<Result<Vec<_>>>()?;

    // junction parameters, found by bisection between samples with different states
    let mut cuts: Vec<(f64, (usize, usize), (usize, usize))> = Vec::new();
    for j in 0..WALK_SAMPLES {
        let j1 = (j + 1) % WALK_SAMPLES;
        if states[j] == states[j1] {
            continue;
        }
        let mut lo = ts[j];
        let end = if j1 == 0 { ts[0] + total } else { ts[j1] };
        let mut cur = states[j];
        while cur != states[j1] {
            let mut hi = end;
            for _ in 0..80 {
                let mid = 0.5 * (lo + hi);
                if state(mid)? == cur {
                    lo = mid;
                } else {
                    hi = mid;
                }
                if hi - lo <= 1e-15 * total {
                    break;
                }
            }
            let next = state(hi)?;
            cuts.push((0.5 * (lo + hi), cur, next));
            cur = next;
            lo = hi;
        }
    }
    if cuts.is_empty() {
        return Err(Error::NotACaustic(0.0));
    }

    let scale = k.max_radius();
    let f_at = |t: f64| {
        let q = param.point(t);
        let (ie, ib) = polygon_tangent_indices(&verts, q)?;
        Ok::<f64, Error>((q - verts[ie]).norm() + (q - verts[ib]).norm())
    };
    if verts.len() > 2 {
        for &(t, from, to) in &cuts {
            if from.0 != to.0 && from.1 != to.1 {
                let q = param.point(t);
                let l = f_at(t)? + crate::geometry::minkowski_perimeter(c, &ConvexBody::disk(1.0)?)?;
                return Err(Error::DegenerateJunction { q1: q.x, q2: q.y, suggested_length: l * (1.0 + 1e-6) });
            }
        }
        for i in 0..cuts.len() {
            let (t0, t1) = (cuts[i].0, cuts[(i + 1) % cuts.len()].0);
            let gap = (t1 - t0).rem_euclid(total);
            if cuts.len() > 1 && gap < 1e-9 * scale {
                let q = param.point(t1);
                let l = f_at(t1)? + crate::geometry::minkowski_perimeter(c, &ConvexBody::disk(1.0)?)?;
                return Err(Error::DegenerateJunction { q1: q.x, q2: q.y, suggested_length: l * (1.0 + 1e-6) });
            }
        }
    }

    // a segment seen along its own line gives e = b on a single point; drop that empty arc
    let mut merged: Vec<(f64, (usize, usize), (usize, usize))> = Vec::new();
    for cut in cuts {
        match merged.last_mut() {
            Some(last) if (cut.0 - last.0).abs() < 1e-12 * total && cut.1 == last.2 => last.2 = cut.2,
            _ => merged.push(cut),
        }
    }
    let cuts = merged;
    let m = cuts.len();
    let mut vertices = Vec::with_capacity(m);
    let mut junctions = Vec::with_capacity(m);
    let mut pairs = Vec::with_capacity(m);
    let mut lengths = Vec::with_capacity(m);
    for i in 0..m {
        let (t0, _, pair) = cuts[i];
        let t1 = cuts[(i + 1) % m].0;
        let span = (t1 - t0).rem_euclid(total);
        let probes = 9;
        let mut sum = 0.0;
        for j in 1..=probes {
            let q = param.point(t0 + span * j as f64 / (probes + 1) as f64);
            sum += (q - verts[pair.0]).norm() + (q - verts[pair.1]).norm();
        }
        let l = sum / probes as f64;
        vertices.push((verts[pair.0] - verts[pair.1]) / l);
        junctions.push(param.point(t0));
        pairs.push(pair);
        lengths.push(l);
    }

    for i in 0..m {
        let prev = vertices[(i + m - 1) % m];
        let n = k.outer_normal(junctions[i])?;
        let edge = vertices[i] - prev;
        if !(edge.dot(&n) < 0.0 && (m == 2 || cross(prev, vertices[i]) > 0.0)) {
            return Err(Error::Numerical(format!(
                "dual edge {i} violates the junction law at ({:.6}, {:.6})",
                junctions[i].x, junctions[i].y
            )));
        }
    }
    let body = if m == 2 { ConvexBody::segment(vertices[0], vertices[1]) } else { ConvexBody::polygon(vertices.clone())? };
    Ok(PolygonDual { body, vertices, junctions, pairs, lengths })
}
