use super::config::BilliardConfig;
use crate::error::{Error, Result};
use crate::geometry::numeric::brent_known;
use crate::geometry::vec::{rot90, rot_m90, V2};
use crate::geometry::{ConvexBody, OrientedLine, Shape};

/// Which line space a line belongs to: chords of the table `K` or of the geometry body `T`.
#[derive(Debug, Clone, Copy, PartialEq, Eq)]
pub enum Side {
    K,
    T,
}

/// Tangency guard band on `|s|`.
pub const TANGENCY_GUARD: f64 = 1e-9;

/// Parameters `(t_in, t_out)` of the intersection of the line with the body.
pub fn chord(body: &ConvexBody, line: &OrientedLine) -> Result<(f64, f64)> {
    let b = line.base;
    let d = line.dir;
    match body.shape() {
        Shape::Disk { center, radius } => quadratic_chord((b - center) / *radius, d / *radius),
        Shape::Ellipse { center, inverse, .. } => quadratic_chord(inverse * (b - center), inverse * d),
        Shape::Polygon { vertices } if vertices.len() >= 3 => {
            let n = vertices.len();
            let (mut t_in, mut t_out) = (f64::NEG_INFINITY, f64::INFINITY);
            for i in 0..n {
                let nn = rot_m90(vertices[(i + 1) % n] - vertices[i]);
                let den = d.dot(&nn);
                let num = (vertices[i] - b).dot(&nn);
                if den > 0.0 {
                    t_out = t_out.min(num / den);
                } else if den < 0.0 {
                    t_in = t_in.max(num / den);
                } else if num < 0.0 {
                    return Err(Error::NoImpact);
                }
            }
            if t_in >= t_out {
                return Err(Error::NoImpact);
            }
            Ok((t_in, t_out))
        }
        Shape::Polygon { .. } => Err(Error::UnsupportedBody("degenerate table".into())),
        _ => generic_chord(body, line),
    }
}

fn quadratic_chord(y: V2, dy: V2) -> Result<(f64, f64)> {
    let a = dy.norm_squared();
    let bb = y.dot(&dy);
    let c = y.norm_squared() - 1.0;
    let disc = bb * bb - a * c;
    if disc <= 0.0 {
        return Err(Error::NoImpact);
    }
    let q = -(bb + bb.signum() * disc.sqrt());
    let (r1, r2) = if q == 0.0 {
        let r = (-c / a).sqrt();
        (-r, r)
    } else {
        (q / a, c / q)
    };
    Ok((r1.min(r2), r1.max(r2)))
}

fn generic_chord(body: &ConvexBody, line: &OrientedLine) -> Result<(f64, f64)> {
    let c = body.center();
    let r = body.max_radius() * 1.01 + 1e-12;
    let tc = (c - line.base).dot(&line.dir);
    let g = |t: f64| body.gauge_about_center(line.point_at(t)) - 1.0;
    let (lo, hi) = (tc - r, tc + r);
    let mut tm = tc;
    let mut gm = g(tc);
    if gm >= 0.0 {
        let gr = 0.5 * (5f64.sqrt() - 1.0);
        let (mut a, mut b) = (lo, hi);
        let mut x1 = b - gr * (b - a);
        let mut x2 = a + gr * (b - a);
        let mut f1 = g(x1);
        let mut f2 = g(x2);
        for _ in 0..200 {
            if f1.min(f2) < 0.0 || (b - a) < 1e-15 * r {
                break;
            }
            if f1 < f2 {
                b = x2;
                x2 = x1;
                f2 = f1;
                x1 = b - gr * (b - a);
                f1 = g(x1);
            } else {
                a = x1;
                x1 = x2;
                f1 = f2;
                x2 = a + gr * (b - a);
                f2 = g(x2);
            }
        }
        if f1 < f2 {
            tm = x1;
            gm = f1;
        } else {
            tm = x2;
            gm = f2;
        }
        if gm >= 0.0 {
            return Err(Error::NoImpact);
        }
    }
    let tol = 1e-15 * r.max(1.0);
    let t_out = brent_known(g, tm, hi, gm, g(hi), tol).ok_or(Error::NoImpact)?;
    let t_in = brent_known(g, lo, tm, g(lo), gm, tol).ok_or(Error::NoImpact)?;
    Ok((t_in, t_out))
}

/// The exit point of the chord of `body` cut out by the line (the next impact of the ray).
pub fn next_impact(body: &ConvexBody, line: &OrientedLine) -> Result<V2> {
    let (_, t_out) = chord(body, line)?;
    if t_out <= 1e-12 * (1.0 + body.max_radius()) {
        return Err(Error::NoImpact);
    }
    Ok(line.point_at(t_out))
}

fn entry_exit(body: &ConvexBody, line: &OrientedLine) -> Result<(V2, V2)> {
    let (a, b) = chord(body, line)?;
    Ok((line.point_at(a), line.point_at(b)))
}

/// `s = −⟨∇h_G(v), τ(q)⟩` at the entry point with `τ` the `h_G`-unit counter-clockwise tangent.
pub(crate) fn s_value(table: &ConvexBody, geom: &ConvexBody, q: V2, v: V2) -> Result<f64> {
    let n = table.outer_normal(q)?;
    let tau = rot90(n);
    let tau = tau / geom.h(tau);
    Ok(-geom.support_point(v).dot(&tau))
}

fn guard(s: f64) -> Result<()> {
    if !(s.abs() < 1.0 - TANGENCY_GUARD) {
        return Err(Error::TangentLine(s));
    }
    Ok(())
}

fn bodies(config: &BilliardConfig, side: Side) -> (&ConvexBody, &ConvexBody) {
    match side {
        Side::K => (config.table(), config.geometry()),
        Side::T => (config.geometry(), config.table()),
    }
}

/// Ψ: 𝓛(K) → 𝓛(T) (side K) and 𝓛(T) → 𝓛(K) (side T).
pub fn psi(config: &BilliardConfig, line: &OrientedLine, side: Side) -> Result<OrientedLine> {
    let (table, geom) = bodies(config, side);
    let (q, q_next) = entry_exit(table, line)?;
    guard(s_value(table, geom, q, line.dir)?)?;
    match side {
        Side::K => {
            let p = geom.inverse_normal(-line.dir)?;
            let w = table.outer_normal(q_next)?;
            Ok(OrientedLine::new(p, w))
        }
        Side::T => {
            let qk = geom.inverse_normal(line.dir)?;
            let n = table.outer_normal(q_next)?;
            Ok(OrientedLine::new(qk, -n))
        }
    }
}

/// Ψ²: the next oriented chord of the `T`-billiard in `K`.
pub fn billiard_map(config: &BilliardConfig, line: &OrientedLine) -> Result<OrientedLine> {
    let l = psi(config, line, Side::K)?;
    psi(config, &l, Side::T)
}

/// Duality transform α: `(q, v) ↦ (p, w)` with `v ∥ n_T(p)` and `w = n_K(q)`.
///
/// `q` is the base point when it lies on the boundary with `v` pointing inward or along the
/// tangent; otherwise the entry point of the chord. Tangent lines are admitted.
pub fn alpha(config: &BilliardConfig, line: &OrientedLine, side: Side) -> Result<OrientedLine> {
    let (table, geom) = bodies(config, side);
    let on_boundary = (table.gauge_about_center(line.base) - 1.0).abs() <= 1e-12;
    let q = if on_boundary && table.outer_normal(line.base)?.dot(&line.dir) <= 0.0 {
        line.base
    } else {
        entry_exit(table, line)?.0
    };
    let p = geom.inverse_normal(line.dir)?;
    let n = table.outer_normal(q)?;
    Ok(OrientedLine::new(p, n))
}
