use super::body::ConvexBody;
use super::curve::Piece;
use super::vec::{angle_of, rot90, v2, wrap_angle, wrap_from, V2};
use crate::error::{Error, Result};

/// Counter-clockwise parametrisation of `∂K` with unit speed for `h_T`, anchored on the
/// positive first axis.
#[derive(Debug, Clone)]
pub struct BoundaryParam {
    body: ConvexBody,
    metric: ConvexBody,
    pieces: Vec<Piece>,
    cum: Vec<f64>,
    theta: Vec<f64>,
    origin: V2,
    offset: f64,
    total: f64,
    tol: f64,
}

/// A boundary sample: point, `h_T`-unit tangent and Euclidean outer normal.
#[derive(Debug, Clone, Copy)]
pub struct BoundarySample {
    pub point: V2,
    pub tangent: V2,
    pub normal: V2,
}

impl BoundaryParam {
    pub fn new(body: &ConvexBody, metric: &ConvexBody, resolution: usize) -> Result<Self> {
        if resolution < 16 {
            return Err(Error::InvalidArgument(format!("resolution {resolution} is below 16")));
        }
        if !metric.is_symmetric() {
            return Err(Error::UnsupportedMetric("metric body must be centrally symmetric".into()));
        }
        if let Some(v) = body.vertices() {
            if v.len() < 3 {
                return Err(Error::InvalidArgument("cannot parametrise a degenerate body".into()));
            }
        }
        let raw = body.pieces();
        let smooth_count = raw.iter().filter(|p| !matches!(p, Piece::Segment { .. })).count();
        let mut pieces = Vec::new();
        for pc in raw {
            let n = match pc {
                Piece::Conic { .. } | Piece::Lp { .. } => (resolution / smooth_count.max(1)).max(4),
                _ => 1,
            };
            pieces.extend(pc.split(n));
        }
        let scale = body.max_radius().max(1e-300);
        let tol = 1e-15 * scale;
        let h = |v: V2| metric.h(v);
        let mut cum = Vec::with_capacity(pieces.len() + 1);
        cum.push(0.0);
        for pc in &pieces {
            let l = pc.length(&h, tol);
            cum.push(cum.last().unwrap() + l);
        }
        let total = *cum.last().unwrap();
        let origin = if body.gauge_about_center(V2::zeros()) < 1.0 - 1e-9 {
            V2::zeros()
        } else {
            body.center()
        };
        let mut theta = Vec::with_capacity(pieces.len());
        let mut prev = angle_of(pieces[0].point(pieces[0].range().0) - origin);
        theta.push(prev);
        for pc in &pieces[1..] {
            let a = angle_of(pc.point(pc.range().0) - origin);
            let d = wrap_angle(a - prev, -1e-12);
            theta.push(theta.last().unwrap() + d);
            prev = a;
        }
        let mut param = BoundaryParam {
            body: body.clone(),
            metric: metric.clone(),
            pieces,
            cum,
            theta,
            origin,
            offset: 0.0,
            total,
            tol,
        };
        param.offset = param.raw_of_direction(v2(1.0, 0.0));
        Ok(param)
    }

    pub fn body(&self) -> &ConvexBody {
        &self.body
    }

    pub fn metric(&self) -> &ConvexBody {
        &self.metric
    }

    /// Total `h_T`-length `P`.
    pub fn total(&self) -> f64 {
        self.total
    }

    fn piece_of_direction(&self, d: V2) -> usize {
        let th = wrap_angle(angle_of(d), self.theta[0]);
        self.theta.partition_point(|&x| x <= th).saturating_sub(1)
    }

    fn raw_of_direction(&self, d: V2) -> f64 {
        let i = self.piece_of_direction(d);
        let pc = &self.pieces[i];
        let tau = pc.param_on_ray(self.origin, d);
        let h = |v: V2| self.metric.h(v);
        self.cum[i] + pc.length_between(&h, pc.range().0, tau, self.tol)
    }

    /// Parameter `t ∈ [0, P)` of a boundary point.
    pub fn t_of(&self, x: V2) -> f64 {
        let raw = self.raw_of_direction(x - self.origin);
        wrap_from(raw - self.offset, 0.0, self.total)
    }

    fn locate(&self, t: f64) -> (usize, f64) {
        let raw = wrap_from(t + self.offset, 0.0, self.total);
        let n = self.pieces.len();
        let i = self.cum.partition_point(|&c| c <= raw).saturating_sub(1).min(n - 1);
        let pc = &self.pieces[i];
        let local = raw - self.cum[i];
        let len = self.cum[i + 1] - self.cum[i];
        let (a, b) = pc.range();
        if len <= 0.0 {
            return (i, a);
        }
        if let Piece::Segment { .. } = pc {
            return (i, (local / len).clamp(0.0, 1.0));
        }
        let h = |v: V2| self.metric.h(v);
        let (mut lo, mut hi) = (a, b);
        let mut tau = a + (b - a) * (local / len);
        for _ in 0..60 {
            let f = pc.length_between(&h, a, tau, self.tol) - local;
            if f.abs() <= 4.0 * self.tol {
                break;
            }
            if f > 0.0 {
                hi = tau;
            } else {
                lo = tau;
            }
            let speed = h(pc.deriv(tau));
            let mut next = tau - f / speed;
            if !(next > lo && next < hi) || !next.is_finite() {
                next = 0.5 * (lo + hi);
            }
            if (next - tau).abs() <= 1e-16 * (1.0 + tau.abs()) {
                tau = next;
                break;
            }
            tau = next;
        }
        (i, tau)
    }

    /// `γ(t)`.
    pub fn point(&self, t: f64) -> V2 {
        let (i, tau) = self.locate(t);
        self.pieces[i].point(tau)
    }

    /// Point, `h_T`-unit tangent and outer normal at parameter `t`.
    pub fn sample(&self, t: f64) -> BoundarySample {
        let (i, tau) = self.locate(t);
        let pc = &self.pieces[i];
        let point = pc.point(tau);
        let normal = pc.normal(tau);
        let d = rot90(normal);
        BoundarySample { point, tangent: d / self.metric.h(d), normal }
    }

    /// `h_T`-unit counter-clockwise tangent at a boundary point with Euclidean outer normal `n`.
    pub fn unit_tangent_for_normal(&self, n: V2) -> V2 {
        let d = rot90(n);
        d / self.metric.h(d)
    }

    /// `m` equally spaced samples starting at `t = 0`.
    pub fn uniform_samples(&self, m: usize) -> Vec<(f64, BoundarySample)> {
        (0..m)
            .map(|j| {
                let t = self.total * j as f64 / m as f64;
                (t, self.sample(t))
            })
            .collect()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::{PI, TAU};

    #[test]
    fn unit_disk_parametrisation() {
        let d = ConvexBody::disk(1.0).unwrap();
        let p = BoundaryParam::new(&d, &d, 1024).unwrap();
        assert!((p.total() - TAU).abs() < 1e-12);
        for t in [0.0, 0.3, 1.0, 2.5, 4.0, 6.0] {
            let x = p.point(t);
            assert!((x - v2(t.cos(), t.sin())).norm() < 1e-12, "{t}");
            assert!((p.t_of(x) - t).abs() < 1e-12);
        }
    }

    #[test]
    fn square_parametrisation() {
        let sq = ConvexBody::lp_ball(f64::INFINITY).unwrap();
        let d = ConvexBody::disk(1.0).unwrap();
        let p = BoundaryParam::new(&sq, &d, 1024).unwrap();
        assert!((p.total() - 8.0).abs() < 1e-13);
        assert!((p.point(0.0) - v2(1.0, 0.0)).norm() < 1e-14);
        assert!((p.point(1.0) - v2(1.0, 1.0)).norm() < 1e-14);
        assert!((p.point(2.5) - v2(-0.5, 1.0)).norm() < 1e-14);
    }

    #[test]
    fn disk_in_l1_metric() {
        let d = ConvexBody::disk(1.0).unwrap();
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        let p = BoundaryParam::new(&d, &l1, 2048).unwrap();
        assert!((p.total() - 4.0 * 2f64.sqrt()).abs() < 1e-11);
        assert!(BoundaryParam::new(&d, &l1, 8).is_err());
    }

    #[test]
    fn ellipse_speed_is_unit() {
        let e = ConvexBody::ellipse(3.0, 2.0).unwrap();
        let t = ConvexBody::lp_ball(1.5).unwrap();
        let p = BoundaryParam::new(&e, &t, 512).unwrap();
        let hstep = 1e-5;
        for k in 0..40 {
            let s = p.total() * k as f64 / 40.0 + 0.01;
            let v = (p.point(s + hstep) - p.point(s - hstep)) / (2.0 * hstep);
            assert!((t.h(v) - 1.0).abs() < 1e-6);
            let x = p.point(s);
            assert!((p.t_of(x) - s).abs() < 1e-11);
        }
        assert!(p.point(0.0).y.abs() < 1e-14 && p.point(0.0).x > 0.0);
        let _ = PI;
    }
}
