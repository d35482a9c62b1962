//! Convex bodies stored as a cyclic sequence of support-set knots.
//!
//! Knot `k` carries an outer-normal angle `phi[k]` and the endpoints of the support set in that
//! direction (`start[k] == end[k]` unless the body has a flat edge there). Between knots the
//! support function is a cubic Hermite interpolant in the normal angle, anchored on the chord
//! midpoint so that corners (`end[k] == start[k+1]`) are reproduced exactly.

use super::numeric::brent_known;
use super::vec::{angle_of, cross, rot90, unit_at, wrap_angle, V2};
use crate::error::{Error, Result};
use std::f64::consts::{PI, TAU};

const FLAT_ANGLE_TOL: f64 = 1e-12;
const CORNER_TOL: f64 = 1e-7;

#[derive(Debug, Clone, PartialEq)]
pub struct SampledBody {
    phi: Vec<f64>,
    start: Vec<V2>,
    end: Vec<V2>,
    center: V2,
    theta: Vec<f64>,
    smooth: bool,
    strictly_convex: bool,
    symmetric: bool,
}

/// Where a boundary point sits relative to the knot structure.
#[derive(Debug, Clone, Copy, PartialEq)]
pub enum Location {
    /// On the flat edge of knot `k`.
    Flat(usize),
    /// Exactly at the corner between knot `k` and `k + 1`.
    Corner(usize),
    /// Inside gap `k` at normal angle `phi`.
    Gap(usize, f64),
}

struct Gap {
    m: V2,
    g0: f64,
    d0: f64,
    g1: f64,
    d1: f64,
    phi0: f64,
    dphi: f64,
}

impl Gap {
    fn eval(&self, phi: f64) -> (f64, f64, f64) {
        let s = (phi - self.phi0) / self.dphi;
        let (s2, s3) = (s * s, s * s * s);
        let dl = self.dphi;
        let g = (2.0 * s3 - 3.0 * s2 + 1.0) * self.g0
            + (s3 - 2.0 * s2 + s) * dl * self.d0
            + (-2.0 * s3 + 3.0 * s2) * self.g1
            + (s3 - s2) * dl * self.d1;
        let gp = ((6.0 * s2 - 6.0 * s) * self.g0
            + (3.0 * s2 - 4.0 * s + 1.0) * dl * self.d0
            + (-6.0 * s2 + 6.0 * s) * self.g1
            + (3.0 * s2 - 2.0 * s) * dl * self.d1)
            / dl;
        let gpp = ((12.0 * s - 6.0) * self.g0
            + (6.0 * s - 4.0) * dl * self.d0
            + (-12.0 * s + 6.0) * self.g1
            + (6.0 * s - 2.0) * dl * self.d1)
            / (dl * dl);
        (g, gp, gpp)
    }
}

impl SampledBody {
    /// Build from boundary points with their outer normals, listed counter-clockwise.
    ///
    /// Consecutive samples with identical normals form a flat edge; consecutive samples closer
    /// than `1e-7` (relative) are merged into a corner.
    pub fn from_boundary_samples(points: &[V2], normals: &[V2]) -> Result<Self> {
        if points.len() != normals.len() || points.len() < 3 {
            return Err(Error::InvalidArgument(
                "need at least three boundary samples with matching normals".into(),
            ));
        }
        let scale = points.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300);
        let n = points.len();
        let mut angles = Vec::with_capacity(n);
        let mut acc = angle_of(normals[0]);
        angles.push(acc);
        let mut total = 0.0;
        for i in 1..=n {
            let a = angle_of(normals[i % n]);
            let mut d = wrap_angle(a - angle_of(normals[i - 1]), -PI);
            if d < 0.0 {
                if d < -1e-6 {
                    return Err(Error::InvalidArgument(
                        "boundary normals are not counter-clockwise monotone".into(),
                    ));
                }
                d = 0.0;
            }
            total += d;
            if i < n {
                acc += d;
                angles.push(acc);
            }
        }
        if (total - TAU).abs() > 1e-6 {
            return Err(Error::InvalidArgument(format!(
                "boundary normals turn by {total} instead of 2π"
            )));
        }

        let mut phi: Vec<f64> = Vec::new();
        let mut start: Vec<V2> = Vec::new();
        let mut end: Vec<V2> = Vec::new();
        for i in 0..n {
            if let Some(&last) = phi.last() {
                if angles[i] - last <= FLAT_ANGLE_TOL {
                    *end.last_mut().unwrap() = points[i];
                    continue;
                }
            }
            phi.push(angles[i]);
            start.push(points[i]);
            end.push(points[i]);
        }
        // the last knot may share its normal with the first one
        if phi.len() > 1 && phi[0] + TAU - *phi.last().unwrap() <= FLAT_ANGLE_TOL {
            let s = start.pop().unwrap();
            end.pop();
            phi.pop();
            start[0] = s;
        }
        if phi.len() < 2 {
            return Err(Error::InvalidArgument("boundary has fewer than two normal directions".into()));
        }
        let m = phi.len();
        for k in 0..m {
            if (end[k] - start[k]).norm() <= 1e-13 * scale {
                end[k] = start[k];
            }
        }
        for k in 0..m {
            let k1 = (k + 1) % m;
            if (start[k1] - end[k]).norm() < CORNER_TOL * scale {
                let mid = 0.5 * (start[k1] + end[k]);
                if start[k] == end[k] {
                    start[k] = mid;
                }
                end[k] = mid;
                if start[k1] == end[k1] {
                    end[k1] = mid;
                }
                start[k1] = mid;
            }
        }
        Ok(Self::from_knots(phi, start, end))
    }

    /// Assemble from raw knots (normal angles increasing over one turn).
    pub fn from_knots(phi: Vec<f64>, start: Vec<V2>, end: Vec<V2>) -> Self {
        let m = phi.len();
        let base = wrap_angle(phi[0], -PI);
        let shift = base - phi[0];
        let phi: Vec<f64> = phi.iter().map(|p| p + shift).collect();
        let strictly_convex = (0..m).all(|k| start[k] == end[k]);
        let smooth = (0..m).all(|k| end[k] != start[(k + 1) % m]);
        let mut body = SampledBody {
            phi,
            start,
            end,
            center: V2::zeros(),
            theta: Vec::new(),
            smooth,
            strictly_convex,
            symmetric: false,
        };
        let scale = body.start.iter().map(|p| p.norm()).fold(0.0, f64::max);
        let sym = (0..m).all(|k| {
            let u = unit_at(body.phi[k]);
            (body.h(u) - body.h(-u)).abs() <= 1e-12 * scale.max(1.0)
        });
        body.symmetric = sym;
        if !sym {
            let mut c = V2::zeros();
            for k in 0..m {
                c += body.start[k] + body.end[k];
            }
            body.center = c / (2.0 * m as f64);
        }
        body.build_theta();
        body
    }

    fn build_theta(&mut self) {
        let m = self.phi.len();
        let mut theta = Vec::with_capacity(2 * m);
        let mut prev = angle_of(self.start[0] - self.center);
        theta.push(prev);
        for k in 0..m {
            for (i, p) in [self.end[k], self.start[(k + 1) % m]].iter().enumerate() {
                if k == m - 1 && i == 1 {
                    break;
                }
                let a = angle_of(p - self.center);
                let d = wrap_angle(a - prev, -1e-9);
                let next = theta.last().unwrap() + if d > TAU - 1e-9 { 0.0 } else { d };
                theta.push(next);
                prev = a;
            }
        }
        self.theta = theta;
    }

    pub fn len(&self) -> usize {
        self.phi.len()
    }

    pub fn is_empty(&self) -> bool {
        self.phi.is_empty()
    }

    pub fn knot(&self, k: usize) -> (f64, V2, V2) {
        (self.phi[k], self.start[k], self.end[k])
    }

    pub fn center(&self) -> V2 {
        self.center
    }

    /// Largest distance of a knot point from the origin.
    pub fn scale(&self) -> f64 {
        self.knot_points().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300)
    }

    pub fn is_smooth(&self) -> bool {
        self.smooth
    }

    pub fn is_strictly_convex(&self) -> bool {
        self.strictly_convex
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    /// True when every gap is a corner, i.e. the body is a polygon.
    pub fn is_polygonal(&self) -> bool {
        let m = self.len();
        (0..m).all(|k| self.end[k] == self.start[(k + 1) % m])
    }

    /// Polygon vertices in counter-clockwise order (meaningful when `is_polygonal`).
    pub fn corner_points(&self) -> Vec<V2> {
        let mut v: Vec<V2> = Vec::new();
        for k in 0..self.len() {
            for p in [self.start[k], self.end[k]] {
                if v.last() != Some(&p) {
                    v.push(p);
                }
            }
        }
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        v
    }

    pub fn is_corner_gap(&self, k: usize) -> bool {
        self.end[k] == self.start[(k + 1) % self.len()]
    }

    fn phi_next(&self, k: usize) -> f64 {
        if k + 1 < self.len() {
            self.phi[k + 1]
        } else {
            self.phi[0] + TAU
        }
    }

    pub fn gap_bounds(&self, k: usize) -> (f64, f64) {
        (self.phi[k], self.phi_next(k))
    }

    fn gap(&self, k: usize) -> Gap {
        let k1 = (k + 1) % self.len();
        let a = self.end[k];
        let b = self.start[k1];
        let m = 0.5 * (a + b);
        let u0 = unit_at(self.phi[k]);
        let phi1 = self.phi_next(k);
        let u1 = unit_at(phi1);
        Gap {
            m,
            g0: (a - m).dot(&u0),
            d0: (a - m).dot(&rot90(u0)),
            g1: (b - m).dot(&u1),
            d1: (b - m).dot(&rot90(u1)),
            phi0: self.phi[k],
            dphi: phi1 - self.phi[k],
        }
    }

    /// Knot index `k` with `phi[k] <= phi < phi[k+1]` and the wrapped angle.
    fn locate_angle(&self, phi: f64) -> (usize, f64) {
        let p = wrap_angle(phi, self.phi[0]);
        let k = self.phi.partition_point(|&x| x <= p);
        (k.saturating_sub(1), p)
    }

    /// Support function for direction `u` (need not be unit).
    pub fn h(&self, u: V2) -> f64 {
        let r = u.norm();
        let (k, p) = self.locate_angle(angle_of(u));
        if p == self.phi[k] {
            return self.start[k].dot(&u).max(self.end[k].dot(&u));
        }
        let gap = self.gap(k);
        let (g, _, _) = gap.eval(p);
        gap.m.dot(&u) + g * r
    }

    /// A support point in direction `u`; the midpoint of the support set on flat edges.
    pub fn support_point(&self, u: V2) -> V2 {
        let (k, p) = self.locate_angle(angle_of(u));
        if p == self.phi[k] {
            return 0.5 * (self.start[k] + self.end[k]);
        }
        self.gap_point(k, p)
    }

    /// Boundary point of gap `k` at normal angle `phi`.
    pub fn gap_point(&self, k: usize, phi: f64) -> V2 {
        let gap = self.gap(k);
        let (g, gp, _) = gap.eval(phi);
        let u = unit_at(phi);
        gap.m + g * u + gp * rot90(u)
    }

    /// Radius of curvature `h + h''` in gap `k` at normal angle `phi`.
    pub fn gap_radius(&self, k: usize, phi: f64) -> f64 {
        let gap = self.gap(k);
        let (g, _, gpp) = gap.eval(phi);
        g + gpp
    }

    /// Radius of curvature at outer normal `u`, `None` at flats and corners.
    pub fn radius_of_curvature(&self, u: V2) -> Option<f64> {
        let (k, p) = self.locate_angle(angle_of(u));
        if p == self.phi[k] && self.start[k] != self.end[k] {
            return None;
        }
        if self.is_corner_gap(k) {
            return None;
        }
        Some(self.gap_radius(k, p))
    }

    /// Boundary point hit by the ray from the reference center in direction `d`.
    pub fn ray_point(&self, d: V2) -> (V2, Location) {
        let c = self.center;
        let th = wrap_angle(angle_of(d), self.theta[0]);
        let idx = self.theta.partition_point(|&x| x <= th).saturating_sub(1);
        let m = self.len();
        let k = idx / 2;
        if idx % 2 == 0 {
            let (a, b) = (self.start[k], self.end[k]);
            if a == b {
                return (a, Location::Flat(k));
            }
            let e = b - a;
            let den = cross(d, e);
            let lam = if den.abs() > 0.0 { cross(a - c, d) / den } else { 0.0 };
            let lam = lam.clamp(0.0, 1.0);
            (a + lam * e, Location::Flat(k))
        } else {
            let k1 = (k + 1) % m;
            if self.end[k] == self.start[k1] {
                return (self.end[k], Location::Corner(k));
            }
            let (p0, p1) = self.gap_bounds(k);
            let f = |phi: f64| cross(self.gap_point(k, phi) - c, d);
            let f0 = cross(self.end[k] - c, d);
            let f1 = cross(self.start[k1] - c, d);
            let phi = if f0 <= 0.0 {
                p0
            } else if f1 >= 0.0 {
                p1
            } else {
                brent_known(f, p0, p1, f0, f1, 1e-15).unwrap_or(0.5 * (p0 + p1))
            };
            (self.gap_point(k, phi), Location::Gap(k, phi))
        }
    }

    /// Minkowski functional about the reference center.
    pub fn gauge_about_center(&self, x: V2) -> f64 {
        let d = x - self.center;
        let r = d.norm();
        if r == 0.0 {
            return 0.0;
        }
        let (b, _) = self.ray_point(d);
        r / (b - self.center).norm()
    }

    /// Outer unit normal at boundary point `x`.
    pub fn outer_normal(&self, x: V2) -> Result<V2> {
        match self.ray_point(x - self.center).1 {
            Location::Flat(k) => {
                let m = self.len();
                let km = (k + m - 1) % m;
                let tol = 1e-9 * self.scale();
                let at_start = self.is_corner_gap(km) && (x - self.start[k]).norm() <= tol;
                let at_end = self.is_corner_gap(k) && (x - self.end[k]).norm() <= tol;
                if at_start || at_end {
                    Err(Error::AmbiguousNormal(x.x, x.y))
                } else {
                    Ok(unit_at(self.phi[k]))
                }
            }
            Location::Corner(_) => Err(Error::AmbiguousNormal(x.x, x.y)),
            Location::Gap(_, phi) => Ok(unit_at(phi)),
        }
    }

    /// Polar body (requires the origin in the interior).
    pub fn polar(&self) -> Result<SampledBody> {
        let m = self.len();
        let mut pts = Vec::new();
        let mut nrm = Vec::new();
        let push = |x: V2, phi: f64, pts: &mut Vec<V2>, nrm: &mut Vec<V2>| {
            let u = unit_at(phi);
            let h = x.dot(&u);
            pts.push(u / h);
            nrm.push(x / x.norm());
        };
        for k in 0..m {
            if self.start[k].dot(&unit_at(self.phi[k])) <= 0.0 {
                return Err(Error::UnsupportedBody("origin is not interior".into()));
            }
            push(self.start[k], self.phi[k], &mut pts, &mut nrm);
            if self.end[k] != self.start[k] {
                push(self.end[k], self.phi[k], &mut pts, &mut nrm);
            }
            if !self.is_corner_gap(k) {
                let (p0, p1) = self.gap_bounds(k);
                let sub = 4;
                for j in 1..sub {
                    let phi = p0 + (p1 - p0) * j as f64 / sub as f64;
                    push(self.gap_point(k, phi), phi, &mut pts, &mut nrm);
                }
            }
        }
        SampledBody::from_boundary_samples(&pts, &nrm)
    }

    /// All boundary knot points, used for bounds and rendering.
    pub fn knot_points(&self) -> impl Iterator<Item = V2> + '_ {
        self.start.iter().chain(self.end.iter()).copied()
    }
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;

    fn ellipse_samples(a: f64, b: f64, n: usize) -> SampledBody {
        let mut p = Vec::new();
        let mut q = Vec::new();
        for i in 0..n {
            let t = TAU * i as f64 / n as f64;
            p.push(v2(a * t.cos(), b * t.sin()));
            q.push(v2(t.cos() / a, t.sin() / b).normalize());
        }
        SampledBody::from_boundary_samples(&p, &q).unwrap()
    }

    #[test]
    fn sampled_ellipse_support_is_accurate() {
        let s = ellipse_samples(3.0, 2.0, 1024);
        assert!(s.is_symmetric() && s.is_smooth() && s.is_strictly_convex());
        for i in 0..97 {
            let u = unit_at(0.1 + i as f64 * 0.0647);
            let exact = (9.0 * u.x * u.x + 4.0 * u.y * u.y).sqrt();
            assert!((s.h(u) - exact).abs() < 1e-10, "{} {}", s.h(u), exact);
        }
    }

    #[test]
    fn square_is_exact() {
        let pts = [v2(1.0, -1.0), v2(1.0, 1.0), v2(-1.0, 1.0), v2(-1.0, -1.0)];
        let mut p = Vec::new();
        let mut n = Vec::new();
        for i in 0..4 {
            let a = pts[i];
            let b = pts[(i + 1) % 4];
            let nn = crate::geometry::vec::rot_m90(b - a).normalize();
            p.push(a);
            n.push(nn);
            p.push(b);
            n.push(nn);
        }
        let s = SampledBody::from_boundary_samples(&p, &n).unwrap();
        assert!(s.is_polygonal());
        assert_eq!(s.corner_points().len(), 4);
        let u = v2(1.0, 0.3);
        assert!((s.h(u) - 1.3).abs() < 1e-14);
        let g = s.gauge_about_center(v2(0.5, 0.25));
        assert!((g - 0.5).abs() < 1e-14);
        assert!((s.outer_normal(v2(1.0, 0.2)).unwrap() - v2(1.0, 0.0)).norm() < 1e-14);
        assert!(s.outer_normal(v2(1.0, 1.0)).is_err());
    }

    #[test]
    fn polar_of_ellipse() {
        let s = ellipse_samples(3.0, 2.0, 2048);
        let p = s.polar().unwrap();
        for i in 0..50 {
            let u = unit_at(i as f64 * 0.13);
            let exact = (u.x * u.x / 9.0 + u.y * u.y / 4.0).sqrt();
            assert!((p.h(u) - exact).abs() < 1e-9);
        }
    }
}
