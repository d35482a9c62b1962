//! Boundary curves as sequences of parametrised pieces.

use super::body::{ConvexBody, Shape};
use super::numeric::{brent_known, integrate};
use super::sampled::SampledBody;
use super::vec::{cross, rot90, rot_m90, unit_at, v2, V2};
use nalgebra::Matrix2;
use std::f64::consts::{FRAC_PI_2, TAU};
use std::sync::Arc;

#[derive(Debug, Clone)]
pub enum Piece {
    Segment { a: V2, b: V2 },
    Conic { center: V2, shape: Matrix2<f64>, inverse: Matrix2<f64>, t0: f64, t1: f64 },
    Lp { p: f64, scale: f64, t0: f64, t1: f64 },
    Sampled { body: Arc<SampledBody>, gap: usize, t0: f64, t1: f64 },
}

fn lp_parts(p: f64, t: f64) -> (f64, f64, V2) {
    let (s, c) = t.sin_cos();
    let (ac, as_) = (c.abs(), s.abs());
    let n = (ac.powf(p) + as_.powf(p)).powf(1.0 / p);
    let dn = n.powf(1.0 - p) * (-ac.powf(p - 1.0) * c.signum() * s + as_.powf(p - 1.0) * s.signum() * c);
    (n, dn, v2(c, s))
}

impl Piece {
    pub fn range(&self) -> (f64, f64) {
        match self {
            Piece::Segment { .. } => (0.0, 1.0),
            Piece::Conic { t0, t1, .. } | Piece::Lp { t0, t1, .. } | Piece::Sampled { t0, t1, .. } => (*t0, *t1),
        }
    }

    pub fn point(&self, t: f64) -> V2 {
        match self {
            Piece::Segment { a, b } => a + (b - a) * t,
            Piece::Conic { center, shape, .. } => center + shape * unit_at(t),
            Piece::Lp { p, scale, .. } => {
                let (n, _, u) = lp_parts(*p, t);
                *scale * u / n
            }
            Piece::Sampled { body, gap, .. } => body.gap_point(*gap, t),
        }
    }

    pub fn deriv(&self, t: f64) -> V2 {
        match self {
            Piece::Segment { a, b } => b - a,
            Piece::Conic { shape, .. } => shape * rot90(unit_at(t)),
            Piece::Lp { p, scale, .. } => {
                let (n, dn, u) = lp_parts(*p, t);
                *scale * (rot90(u) / n - u * dn / (n * n))
            }
            Piece::Sampled { body, gap, .. } => body.gap_radius(*gap, t) * rot90(unit_at(t)),
        }
    }

    /// Euclidean-unit outer normal.
    pub fn normal(&self, t: f64) -> V2 {
        match self {
            Piece::Segment { a, b } => rot_m90(b - a).normalize(),
            Piece::Conic { inverse, .. } => (inverse * unit_at(t)).normalize(),
            Piece::Lp { p, .. } => {
                let x = self.point(t);
                let g = v2(
                    x.x.signum() * x.x.abs().powf(*p - 1.0),
                    x.y.signum() * x.y.abs().powf(*p - 1.0),
                );
                g.normalize()
            }
            Piece::Sampled { .. } => unit_at(t),
        }
    }

    /// Split into `n` pieces of equal parameter length (segments are left whole).
    pub fn split(&self, n: usize) -> Vec<Piece> {
        if n <= 1 || matches!(self, Piece::Segment { .. }) {
            return vec![self.clone()];
        }
        let (a, b) = self.range();
        (0..n)
            .map(|i| {
                let s0 = a + (b - a) * i as f64 / n as f64;
                let s1 = if i + 1 == n { b } else { a + (b - a) * (i + 1) as f64 / n as f64 };
                self.with_range(s0, s1)
            })
            .collect()
    }

    fn with_range(&self, s0: f64, s1: f64) -> Piece {
        match self {
            Piece::Segment { .. } => self.clone(),
            Piece::Conic { center, shape, inverse, .. } => Piece::Conic {
                center: *center,
                shape: *shape,
                inverse: *inverse,
                t0: s0,
                t1: s1,
            },
            Piece::Lp { p, scale, .. } => Piece::Lp { p: *p, scale: *scale, t0: s0, t1: s1 },
            Piece::Sampled { body, gap, .. } => Piece::Sampled { body: body.clone(), gap: *gap, t0: s0, t1: s1 },
        }
    }

    /// Length of the piece between parameters `a` and `b` measured with `metric`.
    pub fn length_between<M: Fn(V2) -> f64>(&self, metric: &M, a: f64, b: f64, tol: f64) -> f64 {
        match self {
            Piece::Segment { a: p, b: q } => metric(q - p) * (b - a),
            _ => integrate(|t| metric(self.deriv(t)), a, b, tol),
        }
    }

    pub fn length<M: Fn(V2) -> f64>(&self, metric: &M, tol: f64) -> f64 {
        let (a, b) = self.range();
        self.length_between(metric, a, b, tol)
    }

    /// Parameter of the point of the piece on the ray from `origin` in direction `d`.
    pub fn param_on_ray(&self, origin: V2, d: V2) -> f64 {
        let (a, b) = self.range();
        let f = |t: f64| cross(self.point(t) - origin, d);
        let fa = f(a);
        let fb = f(b);
        if fa <= 0.0 {
            return a;
        }
        if fb >= 0.0 {
            return b;
        }
        if let Piece::Segment { a: p, b: q } = self {
            let e = q - p;
            let den = cross(d, e);
            if den != 0.0 {
                return (cross(p - origin, d) / den).clamp(0.0, 1.0);
            }
        }
        brent_known(f, a, b, fa, fb, 1e-15 * (1.0 + a.abs().max(b.abs()))).unwrap_or(0.5 * (a + b))
    }
}

impl ConvexBody {
    /// Counter-clockwise boundary pieces. Points and segments yield their degenerate traversal.
    pub fn pieces(&self) -> Vec<Piece> {
        match self.shape() {
            Shape::Disk { center, radius } => {
                let q = Matrix2::new(*radius, 0.0, 0.0, *radius);
                vec![Piece::Conic {
                    center: *center,
                    shape: q,
                    inverse: q.try_inverse().unwrap(),
                    t0: 0.0,
                    t1: TAU,
                }]
            }
            Shape::Ellipse { center, shape, inverse } => vec![Piece::Conic {
                center: *center,
                shape: *shape,
                inverse: *inverse,
                t0: 0.0,
                t1: TAU,
            }],
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                if n == 1 {
                    return Vec::new();
                }
                (0..n)
                    .map(|i| Piece::Segment { a: vertices[i], b: vertices[(i + 1) % n] })
                    .collect()
            }
            Shape::LpBall { p, scale } => (0..4)
                .map(|k| Piece::Lp {
                    p: *p,
                    scale: *scale,
                    t0: k as f64 * FRAC_PI_2,
                    t1: (k + 1) as f64 * FRAC_PI_2,
                })
                .collect(),
            Shape::Sampled(s) => {
                let mut out = Vec::with_capacity(2 * s.len());
                for k in 0..s.len() {
                    let (_, a, b) = s.knot(k);
                    if a != b {
                        out.push(Piece::Segment { a, b });
                    }
                    if !s.is_corner_gap(k) {
                        let (t0, t1) = s.gap_bounds(k);
                        out.push(Piece::Sampled { body: s.clone(), gap: k, t0, t1 });
                    }
                }
                out
            }
        }
    }

    /// Length of the counter-clockwise boundary measured with `metric` applied to the velocity.
    pub fn boundary_length<M: Fn(V2) -> f64>(&self, metric: &M) -> f64 {
        let scale = self.max_radius().max(1e-300);
        let pieces = self.pieces();
        let tol = 1e-14 * scale;
        pieces.iter().map(|pc| pc.length(metric, tol)).sum()
    }
}
