use super::hull::convex_hull;
use super::sampled::SampledBody;
use super::vec::{angle_of, cross, rot_m90, unit_at, v2, V2};
use crate::error::{Error, Result};
use nalgebra::Matrix2;
use std::f64::consts::TAU;
use std::sync::Arc;

/// Closed-form and sampled variants of a planar convex body.
#[derive(Debug, Clone, PartialEq)]
pub enum Shape {
    Disk { center: V2, radius: f64 },
    /// `center + shape · B` with `shape` symmetric positive definite.
    Ellipse { center: V2, shape: Matrix2<f64>, inverse: Matrix2<f64> },
    /// Counter-clockwise vertices; one or two vertices give a point or a segment.
    Polygon { vertices: Vec<V2> },
    /// `scale ·` unit ball of the ℓp norm, `1 < p < ∞`.
    LpBall { p: f64, scale: f64 },
    Sampled(Arc<SampledBody>),
}

#[derive(Debug, Clone, PartialEq)]
pub struct ConvexBody {
    shape: Shape,
    symmetric: bool,
}

fn lp_norm(x: V2, p: f64) -> f64 {
    let m = x.x.abs().max(x.y.abs());
    if m == 0.0 {
        return 0.0;
    }
    let a = (x.x.abs() / m).powf(p);
    let b = (x.y.abs() / m).powf(p);
    m * (a + b).powf(1.0 / p)
}

/// Gradient of the ℓp norm at `x` (a point of the dual unit sphere).
fn lp_norm_grad(x: V2, p: f64) -> V2 {
    let n = lp_norm(x, p);
    let y = x / n;
    v2(
        y.x.signum() * y.x.abs().powf(p - 1.0),
        y.y.signum() * y.y.abs().powf(p - 1.0),
    )
}

pub(crate) fn conjugate_exponent(p: f64) -> f64 {
    if p.is_infinite() {
        1.0
    } else if p == 1.0 {
        f64::INFINITY
    } else {
        p / (p - 1.0)
    }
}

impl ConvexBody {
    fn new(shape: Shape) -> Self {
        let symmetric = match &shape {
            Shape::Disk { center, .. } | Shape::Ellipse { center, .. } => center.norm() == 0.0,
            Shape::Polygon { vertices } => polygon_symmetric(vertices),
            Shape::LpBall { .. } => true,
            Shape::Sampled(s) => s.is_symmetric(),
        };
        ConvexBody { shape, symmetric }
    }

    pub fn disk(radius: f64) -> Result<Self> {
        Self::disk_at(V2::zeros(), radius)
    }

    pub fn disk_at(center: V2, radius: f64) -> Result<Self> {
        if !(radius > 0.0 && radius.is_finite()) {
            return Err(Error::InvalidArgument(format!("disk radius {radius} must be positive")));
        }
        Ok(Self::new(Shape::Disk { center, radius }))
    }

    /// Axis-aligned ellipse with semi-axes `a`, `b`, centred at the origin.
    pub fn ellipse(a: f64, b: f64) -> Result<Self> {
        Self::ellipse_rotated(V2::zeros(), a, b, 0.0)
    }

    pub fn ellipse_rotated(center: V2, a: f64, b: f64, angle: f64) -> Result<Self> {
        if !(a > 0.0 && b > 0.0 && a.is_finite() && b.is_finite()) {
            return Err(Error::InvalidArgument(format!("semi-axes {a}, {b} must be positive")));
        }
        let r = nalgebra::Rotation2::new(angle).into_inner();
        let q = r * Matrix2::new(a, 0.0, 0.0, b) * r.transpose();
        Self::ellipse_with_shape(center, q)
    }

    /// Ellipse `center + Q·B` for a symmetric positive-definite `Q`.
    pub fn ellipse_with_shape(center: V2, q: Matrix2<f64>) -> Result<Self> {
        let q = 0.5 * (q + q.transpose());
        let det = q.determinant();
        if !(q[(0, 0)] > 0.0 && det > 0.0) {
            return Err(Error::InvalidArgument("ellipse matrix must be positive definite".into()));
        }
        let inverse = q.try_inverse().ok_or_else(|| Error::InvalidArgument("singular ellipse".into()))?;
        if (q[(0, 0)] - q[(1, 1)]).abs() <= 1e-15 * q[(0, 0)] && q[(0, 1)] == 0.0 {
            return Self::disk_at(center, q[(0, 0)]);
        }
        Ok(Self::new(Shape::Ellipse { center, shape: q, inverse }))
    }

    /// The ellipse `E` with `A·E = B` (unit disk), for symmetric positive-definite `A`.
    pub fn ellipse_from_matrix(a: Matrix2<f64>) -> Result<Self> {
        let q = a
            .try_inverse()
            .ok_or_else(|| Error::InvalidArgument("singular ellipse matrix".into()))?;
        Self::ellipse_with_shape(V2::zeros(), q)
    }

    /// Polygon from counter-clockwise convex vertices. Duplicate consecutive vertices are dropped.
    pub fn polygon(vertices: Vec<V2>) -> Result<Self> {
        let mut v: Vec<V2> = Vec::with_capacity(vertices.len());
        for p in vertices {
            if !super::vec::is_finite(p) {
                return Err(Error::InvalidArgument("polygon vertex is not finite".into()));
            }
            if v.last() != Some(&p) {
                v.push(p);
            }
        }
        while v.len() > 1 && v.first() == v.last() {
            v.pop();
        }
        if v.is_empty() {
            return Err(Error::InvalidArgument("polygon needs at least one vertex".into()));
        }
        let n = v.len();
        if n >= 3 {
            let scale = v.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
            let mut area = 0.0;
            for i in 0..n {
                let a = v[i];
                let b = v[(i + 1) % n];
                let c = v[(i + 2) % n];
                if cross(b - a, c - b) < -1e-12 * scale * scale {
                    return Err(Error::InvalidArgument(
                        "polygon vertices must be convex and counter-clockwise".into(),
                    ));
                }
                area += cross(a, b);
            }
            if area <= 0.0 {
                return Err(Error::InvalidArgument("polygon must be counter-clockwise".into()));
            }
        }
        Ok(Self::new(Shape::Polygon { vertices: v }))
    }

    /// Convex hull of a point cloud as a polygon (possibly a segment or a point).
    pub fn hull_of(points: &[V2]) -> Result<Self> {
        Self::polygon(convex_hull(points))
    }

    pub fn point(p: V2) -> Self {
        Self::new(Shape::Polygon { vertices: vec![p] })
    }

    pub fn segment(a: V2, b: V2) -> Self {
        if a == b {
            return Self::point(a);
        }
        Self::new(Shape::Polygon { vertices: vec![a, b] })
    }

    /// Unit ball of the ℓp norm.
    pub fn lp_ball(p: f64) -> Result<Self> {
        Self::lp_ball_scaled(p, 1.0)
    }

    pub fn lp_ball_scaled(p: f64, scale: f64) -> Result<Self> {
        if !(p >= 1.0) {
            return Err(Error::InvalidExponent(p));
        }
        if !(scale > 0.0 && scale.is_finite()) {
            return Err(Error::InvalidArgument(format!("scale {scale} must be positive")));
        }
        let s = scale;
        if p == 1.0 {
            return Self::polygon(vec![v2(s, 0.0), v2(0.0, s), v2(-s, 0.0), v2(0.0, -s)]);
        }
        if p.is_infinite() {
            return Self::polygon(vec![v2(s, -s), v2(s, s), v2(-s, s), v2(-s, -s)]);
        }
        if p == 2.0 {
            return Self::disk(s);
        }
        Ok(Self::new(Shape::LpBall { p, scale }))
    }

    pub fn sampled(body: SampledBody) -> Self {
        Self::new(Shape::Sampled(Arc::new(body)))
    }

    /// Sampled body from counter-clockwise boundary points and outer normals.
    pub fn from_boundary_samples(points: &[V2], normals: &[V2]) -> Result<Self> {
        Ok(Self::sampled(SampledBody::from_boundary_samples(points, normals)?))
    }

    /// Minkowski sum with a disk of radius `rho` (rounded corners), as a sampled body.
    pub fn rounded(&self, rho: f64, samples_per_turn: usize) -> Result<Self> {
        if !(rho > 0.0) {
            return Err(Error::InvalidArgument("rounding radius must be positive".into()));
        }
        let n = samples_per_turn.max(64);
        let mut pts = Vec::with_capacity(n);
        let mut nrm = Vec::with_capacity(n);
        match &self.shape {
            Shape::Polygon { vertices } if vertices.len() >= 2 => {
                let m = vertices.len();
                for i in 0..m {
                    let prev = vertices[(i + m - 1) % m];
                    let cur = vertices[i];
                    let next = vertices[(i + 1) % m];
                    let a0 = angle_of(rot_m90(cur - prev));
                    let mut a1 = angle_of(rot_m90(next - cur));
                    while a1 <= a0 {
                        a1 += TAU;
                    }
                    let k = (((a1 - a0) / TAU) * n as f64).ceil().max(2.0) as usize;
                    for j in 0..=k {
                        let u = unit_at(a0 + (a1 - a0) * j as f64 / k as f64);
                        pts.push(cur + rho * u);
                        nrm.push(u);
                    }
                }
            }
            _ => {
                for j in 0..n {
                    let u = unit_at(TAU * j as f64 / n as f64);
                    pts.push(self.support_point(u) + rho * u);
                    nrm.push(u);
                }
            }
        }
        Self::from_boundary_samples(&pts, &nrm)
    }

    pub fn shape(&self) -> &Shape {
        &self.shape
    }

    pub fn is_symmetric(&self) -> bool {
        self.symmetric
    }

    pub fn is_smooth(&self) -> bool {
        match &self.shape {
            Shape::Polygon { .. } => false,
            Shape::Sampled(s) => s.is_smooth(),
            _ => true,
        }
    }

    pub fn is_strictly_convex(&self) -> bool {
        match &self.shape {
            Shape::Polygon { .. } => false,
            Shape::Sampled(s) => s.is_strictly_convex(),
            _ => true,
        }
    }

    pub fn is_polygon(&self) -> bool {
        matches!(self.shape, Shape::Polygon { .. })
    }

    pub fn vertices(&self) -> Option<&[V2]> {
        match &self.shape {
            Shape::Polygon { vertices } => Some(vertices),
            _ => None,
        }
    }

    /// A reference interior point (relative interior for segments).
    pub fn center(&self) -> V2 {
        match &self.shape {
            Shape::Disk { center, .. } | Shape::Ellipse { center, .. } => *center,
            Shape::Polygon { vertices } => {
                if self.symmetric {
                    return V2::zeros();
                }
                vertices.iter().sum::<V2>() / vertices.len() as f64
            }
            Shape::LpBall { .. } => V2::zeros(),
            Shape::Sampled(s) => s.center(),
        }
    }

    /// Support function `h(u) = sup ⟨x,u⟩`, with `u` not required to be unit.
    ///
    /// No check for `u = 0`; see [`ConvexBody::support`].
    #[inline]
    pub fn h(&self, u: V2) -> f64 {
        match &self.shape {
            Shape::Disk { center, radius } => center.dot(&u) + radius * u.norm(),
            Shape::Ellipse { center, shape, .. } => center.dot(&u) + (shape * u).norm(),
            Shape::Polygon { vertices } => {
                vertices.iter().map(|v| v.dot(&u)).fold(f64::NEG_INFINITY, f64::max)
            }
            Shape::LpBall { p, scale } => scale * lp_norm(u, conjugate_exponent(*p)),
            Shape::Sampled(s) => s.h(u),
        }
    }

    pub fn support(&self, u: V2) -> Result<f64> {
        if u.norm() == 0.0 || !super::vec::is_finite(u) {
            return Err(Error::InvalidArgument("support direction must be nonzero".into()));
        }
        Ok(self.h(u))
    }

    /// A maximiser of `⟨x, u⟩` over the body (a vertex for polygons, midpoint on sampled flats).
    pub fn support_point(&self, u: V2) -> V2 {
        match &self.shape {
            Shape::Disk { center, radius } => center + *radius * u / u.norm(),
            Shape::Ellipse { center, shape, .. } => {
                let qu = shape * u;
                center + shape * qu / qu.norm()
            }
            Shape::Polygon { vertices } => {
                let mut best = vertices[0];
                let mut bv = best.dot(&u);
                for v in &vertices[1..] {
                    let d = v.dot(&u);
                    if d > bv {
                        bv = d;
                        best = *v;
                    }
                }
                best
            }
            Shape::LpBall { p, scale } => {
                let q = conjugate_exponent(*p);
                *scale * lp_norm_grad(u, q)
            }
            Shape::Sampled(s) => s.support_point(u),
        }
    }

    /// The unique boundary point with outer normal parallel to `v`.
    pub fn inverse_normal(&self, v: V2) -> Result<V2> {
        if v.norm() == 0.0 {
            return Err(Error::InvalidArgument("direction must be nonzero".into()));
        }
        if !self.is_strictly_convex() {
            return Err(Error::NonUniqueSupport);
        }
        Ok(self.support_point(v))
    }

    /// Gauge (Minkowski functional) of a centrally symmetric body.
    pub fn gauge(&self, x: V2) -> Result<f64> {
        if !self.symmetric {
            return Err(Error::UnsupportedBody("gauge needs a centrally symmetric body".into()));
        }
        Ok(self.gauge_about_center(x))
    }

    /// Minkowski functional with respect to [`ConvexBody::center`]; needs a full-dimensional body.
    pub fn gauge_about_center(&self, x: V2) -> f64 {
        match &self.shape {
            Shape::Disk { center, radius } => (x - center).norm() / radius,
            Shape::Ellipse { center, inverse, .. } => (inverse * (x - center)).norm(),
            Shape::Polygon { vertices } => {
                let c = self.center();
                let n = vertices.len();
                if n < 3 {
                    return if (x - c).norm() == 0.0 { 0.0 } else { f64::INFINITY };
                }
                let mut g: f64 = 0.0;
                for i in 0..n {
                    let a = vertices[i];
                    let nn = rot_m90(vertices[(i + 1) % n] - a);
                    g = g.max((x - c).dot(&nn) / (a - c).dot(&nn));
                }
                g
            }
            Shape::LpBall { p, scale } => lp_norm(x, *p) / scale,
            Shape::Sampled(s) => s.gauge_about_center(x),
        }
    }

    /// Gradient of [`ConvexBody::gauge_about_center`] at `x` (smooth bodies; a subgradient otherwise).
    pub fn gauge_gradient(&self, x: V2) -> V2 {
        match &self.shape {
            Shape::Disk { center, radius } => (x - center) / ((x - center).norm() * radius),
            Shape::Ellipse { center, inverse, .. } => {
                let y = inverse * (x - center);
                inverse * y / y.norm()
            }
            Shape::LpBall { p, scale } => lp_norm_grad(x, *p) / *scale,
            _ => {
                let c = self.center();
                let g = self.gauge_about_center(x);
                let b = c + (x - c) / g;
                let n = self.outer_normal(b).unwrap_or_else(|_| (x - c).normalize());
                n / (b - c).dot(&n)
            }
        }
    }

    /// Whether `x` lies in the body up to tolerance `tol` (absolute, in gauge units for solids).
    pub fn contains(&self, x: V2, tol: f64) -> bool {
        if let Shape::Polygon { vertices } = &self.shape {
            match vertices.len() {
                1 => return (x - vertices[0]).norm() <= tol,
                2 => return point_segment_distance(x, vertices[0], vertices[1]) <= tol,
                _ => {}
            }
        }
        self.gauge_about_center(x) <= 1.0 + tol
    }

    /// Polar body `K° = {y : ⟨x,y⟩ ≤ 1 ∀x∈K}`; requires a centrally symmetric body.
    pub fn polar(&self) -> Result<Self> {
        if !self.symmetric {
            return Err(Error::UnsupportedBody("polar needs a centrally symmetric body".into()));
        }
        match &self.shape {
            Shape::Disk { radius, .. } => Self::disk(1.0 / radius),
            Shape::Ellipse { inverse, .. } => Self::ellipse_with_shape(V2::zeros(), *inverse),
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                if n < 3 {
                    return Err(Error::UnsupportedBody("polar of a degenerate polygon is unbounded".into()));
                }
                let mut out = Vec::with_capacity(n);
                for i in 0..n {
                    let a = vertices[i];
                    let nn = rot_m90(vertices[(i + 1) % n] - a).normalize();
                    out.push(nn / a.dot(&nn));
                }
                Self::polygon(out)
            }
            Shape::LpBall { p, scale } => Self::lp_ball_scaled(conjugate_exponent(*p), 1.0 / scale),
            Shape::Sampled(s) => Ok(Self::sampled(s.polar()?)),
        }
    }

    /// Euclidean-unit outer normal at boundary point `q`.
    pub fn outer_normal(&self, q: V2) -> Result<V2> {
        match &self.shape {
            Shape::Disk { center, .. } => Ok((q - center).normalize()),
            Shape::Ellipse { center, inverse, .. } => Ok((inverse * (inverse * (q - center))).normalize()),
            Shape::Polygon { vertices } => {
                let n = vertices.len();
                if n < 3 {
                    return Err(Error::AmbiguousNormal(q.x, q.y));
                }
                let scale = vertices.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1.0);
                let mut best = (f64::INFINITY, 0usize);
                for (i, v) in vertices.iter().enumerate() {
                    if (q - v).norm() <= 1e-9 * scale {
                        return Err(Error::AmbiguousNormal(q.x, q.y));
                    }
                    let d = point_segment_distance(q, *v, vertices[(i + 1) % n]);
                    if d < best.0 {
                        best = (d, i);
                    }
                }
                let i = best.1;
                Ok(rot_m90(vertices[(i + 1) % n] - vertices[i]).normalize())
            }
            Shape::LpBall { p, .. } => Ok(lp_norm_grad(q, *p).normalize()),
            Shape::Sampled(s) => s.outer_normal(q),
        }
    }

    /// Radius of curvature at the boundary point with outer normal `u`; `None` where undefined.
    pub fn radius_of_curvature(&self, u: V2) -> Option<f64> {
        let u = u.normalize();
        match &self.shape {
            Shape::Disk { radius, .. } => Some(*radius),
            Shape::Ellipse { shape, .. } => {
                let d = shape.determinant();
                Some(d * d / (shape * u).norm().powi(3))
            }
            Shape::Polygon { .. } => None,
            Shape::LpBall { .. } => {
                let phi = angle_of(u);
                let d = 1e-4;
                let f = |a: f64| self.h(unit_at(a));
                let h0 = f(phi);
                let h2 = (-f(phi + 2.0 * d) + 16.0 * f(phi + d) - 30.0 * h0 + 16.0 * f(phi - d)
                    - f(phi - 2.0 * d))
                    / (12.0 * d * d);
                Some(h0 + h2)
            }
            Shape::Sampled(s) => s.radius_of_curvature(u),
        }
    }

    /// Curvature at the boundary point with outer normal `u`.
    pub fn curvature(&self, u: V2) -> Option<f64> {
        self.radius_of_curvature(u).map(|r| 1.0 / r)
    }

    /// Largest distance from [`ConvexBody::center`] to the boundary.
    pub fn max_radius(&self) -> f64 {
        let c = self.center();
        match &self.shape {
            Shape::Disk { radius, .. } => *radius,
            Shape::Ellipse { shape, .. } => {
                let e = shape.symmetric_eigenvalues();
                e[0].abs().max(e[1].abs())
            }
            Shape::Polygon { vertices } => vertices.iter().map(|v| (v - c).norm()).fold(0.0, f64::max),
            Shape::LpBall { p, scale } => {
                if *p < 2.0 {
                    *scale
                } else {
                    scale * 2f64.powf(0.5 - 1.0 / p)
                }
            }
            Shape::Sampled(s) => s.knot_points().map(|v| (v - c).norm()).fold(0.0, f64::max),
        }
    }

    /// Image under `x ↦ factor·x`.
    pub fn scaled(&self, factor: f64) -> Result<Self> {
        if !(factor > 0.0) {
            return Err(Error::InvalidArgument("scale factor must be positive".into()));
        }
        Ok(match &self.shape {
            Shape::Disk { center, radius } => Self::disk_at(center * factor, radius * factor)?,
            Shape::Ellipse { center, shape, .. } => Self::ellipse_with_shape(center * factor, shape * factor)?,
            Shape::Polygon { vertices } => Self::new(Shape::Polygon {
                vertices: vertices.iter().map(|v| v * factor).collect(),
            }),
            Shape::LpBall { p, scale } => Self::lp_ball_scaled(*p, scale * factor)?,
            Shape::Sampled(s) => {
                let (phi, st, en) = knots_of(s);
                Self::sampled(SampledBody::from_knots(
                    phi,
                    st.iter().map(|v| v * factor).collect(),
                    en.iter().map(|v| v * factor).collect(),
                ))
            }
        })
    }

    /// Image under `x ↦ x + shift`.
    pub fn translated(&self, shift: V2) -> Result<Self> {
        Ok(match &self.shape {
            Shape::Disk { center, radius } => Self::disk_at(center + shift, *radius)?,
            Shape::Ellipse { center, shape, .. } => Self::ellipse_with_shape(center + shift, *shape)?,
            Shape::Polygon { vertices } => Self::new(Shape::Polygon {
                vertices: vertices.iter().map(|v| v + shift).collect(),
            }),
            Shape::LpBall { .. } | Shape::Sampled(_) => {
                let n = 4096;
                let mut pts = Vec::with_capacity(n);
                let mut nrm = Vec::with_capacity(n);
                if let Shape::Sampled(s) = &self.shape {
                    let (phi, st, en) = knots_of(s);
                    return Ok(Self::sampled(SampledBody::from_knots(
                        phi,
                        st.iter().map(|v| v + shift).collect(),
                        en.iter().map(|v| v + shift).collect(),
                    )));
                }
                for j in 0..n {
                    let u = unit_at(TAU * j as f64 / n as f64);
                    pts.push(self.support_point(u) + shift);
                    nrm.push(u);
                }
                Self::from_boundary_samples(&pts, &nrm)?
            }
        })
    }

    /// Points along the boundary, counter-clockwise (for rendering and brute-force checks).
    pub fn boundary_points(&self, n: usize) -> Vec<V2> {
        match &self.shape {
            Shape::Polygon { vertices } => {
                let m = vertices.len();
                if m == 1 {
                    return vertices.clone();
                }
                let per_edge = (n / m).max(1);
                let mut out = Vec::with_capacity(per_edge * m);
                for i in 0..m {
                    let a = vertices[i];
                    let b = vertices[(i + 1) % m];
                    for j in 0..per_edge {
                        out.push(a + (b - a) * (j as f64 / per_edge as f64));
                    }
                }
                out
            }
            _ => {
                let c = self.center();
                (0..n)
                    .map(|j| {
                        let d = unit_at(TAU * j as f64 / n as f64);
                        c + d / self.gauge_about_center(c + d)
                    })
                    .collect()
            }
        }
    }
}

fn knots_of(s: &SampledBody) -> (Vec<f64>, Vec<V2>, Vec<V2>) {
    let mut phi = Vec::with_capacity(s.len());
    let mut st = Vec::with_capacity(s.len());
    let mut en = Vec::with_capacity(s.len());
    for k in 0..s.len() {
        let (p, a, b) = s.knot(k);
        phi.push(p);
        st.push(a);
        en.push(b);
    }
    (phi, st, en)
}

fn polygon_symmetric(v: &[V2]) -> bool {
    let n = v.len();
    if n % 2 == 1 {
        return n == 1 && v[0].norm() == 0.0;
    }
    let scale = v.iter().map(|p| p.norm()).fold(0.0, f64::max).max(1e-300);
    (0..n / 2).all(|i| (v[i] + v[i + n / 2]).norm() <= 1e-12 * scale)
}

pub(crate) fn point_segment_distance(x: V2, a: V2, b: V2) -> f64 {
    let e = b - a;
    let l2 = e.norm_squared();
    if l2 == 0.0 {
        return (x - a).norm();
    }
    let t = ((x - a).dot(&e) / l2).clamp(0.0, 1.0);
    (x - a - t * e).norm()
}

/// Outer normal of the edge from `a` to `b` of a counter-clockwise polygon.
#[inline]
pub fn edge_normal(a: V2, b: V2) -> V2 {
    rot_m90(b - a)
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn closed_form_supports() {
        let d = ConvexBody::disk(1.0).unwrap();
        assert!((d.support(v2(3.0, 4.0)).unwrap() - 5.0).abs() < 1e-15);
        assert!(d.support(V2::zeros()).is_err());
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        assert!((l1.support(v2(1.0, 2.0)).unwrap() - 2.0).abs() < 1e-15);
        let e = ConvexBody::ellipse(3.0, 2.0).unwrap();
        assert!((e.support(v2(1.0, 0.0)).unwrap() - 3.0).abs() < 1e-15);
    }

    #[test]
    fn gauges() {
        let d = ConvexBody::disk(1.0).unwrap();
        assert!((d.gauge(v2(0.0, 2.0)).unwrap() - 2.0).abs() < 1e-15);
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        assert!((l1.gauge(v2(1.0, 1.0)).unwrap() - 2.0).abs() < 1e-15);
        let e = ConvexBody::ellipse(3.0, 2.0).unwrap();
        assert!((e.gauge(v2(3.0, 0.0)).unwrap() - 1.0).abs() < 1e-15);
        let off = ConvexBody::disk_at(v2(1.0, 0.0), 1.0).unwrap();
        assert!(off.gauge(v2(0.5, 0.0)).is_err());
    }

    #[test]
    fn polars() {
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        let sq = l1.polar().unwrap();
        let v = sq.vertices().unwrap();
        assert_eq!(v.len(), 4);
        assert!(v.iter().all(|p| (p.x.abs() - 1.0).abs() < 1e-15 && (p.y.abs() - 1.0).abs() < 1e-15));
        let d = ConvexBody::disk(2.0).unwrap().polar().unwrap();
        assert!((d.h(v2(1.0, 0.0)) - 0.5).abs() < 1e-15);
        let lp = ConvexBody::lp_ball(1.5).unwrap().polar().unwrap();
        match lp.shape() {
            Shape::LpBall { p, .. } => assert!((p - 3.0).abs() < 1e-12),
            _ => panic!(),
        }
    }

    #[test]
    fn normals_and_inverse_normals() {
        let d = ConvexBody::disk(1.0).unwrap();
        assert!((d.outer_normal(v2(0.0, 1.0)).unwrap() - v2(0.0, 1.0)).norm() < 1e-15);
        let e = ConvexBody::ellipse(3.0, 2.0).unwrap();
        assert!((e.outer_normal(v2(3.0, 0.0)).unwrap() - v2(1.0, 0.0)).norm() < 1e-15);
        let sq = ConvexBody::lp_ball(f64::INFINITY).unwrap();
        assert!((sq.outer_normal(v2(1.0, 0.0)).unwrap() - v2(1.0, 0.0)).norm() < 1e-15);
        assert!(matches!(sq.outer_normal(v2(1.0, 1.0)), Err(Error::AmbiguousNormal(..))));
        assert!((d.inverse_normal(v2(0.0, -1.0)).unwrap() - v2(0.0, -1.0)).norm() < 1e-15);
        assert!((e.inverse_normal(v2(1.0, 0.0)).unwrap() - v2(3.0, 0.0)).norm() < 1e-15);
        assert!(matches!(sq.inverse_normal(v2(1.0, 0.0)), Err(Error::NonUniqueSupport)));
    }

    #[test]
    fn lp_support_point_matches_dense_argmax() {
        let b = ConvexBody::lp_ball(1.5).unwrap();
        let u = v2(1.0, 1.0);
        let p = b.inverse_normal(u).unwrap();
        let mut best = (f64::NEG_INFINITY, V2::zeros());
        for j in 0..200_000 {
            let d = unit_at(TAU * j as f64 / 200_000.0);
            let x = d / b.gauge(d).unwrap();
            if x.dot(&u) > best.0 {
                best = (x.dot(&u), x);
            }
        }
        assert!((p - best.1).norm() < 1e-4);
        assert!((p.dot(&u) - best.0).abs() < 1e-10);
        assert!((b.gauge(p).unwrap() - 1.0).abs() < 1e-14);
    }

    #[test]
    fn lp_family_normal_near_diagonal() {
        let b = ConvexBody::lp_ball(1.05).unwrap();
        let d = v2(1.0, 1.0);
        let x = d / b.gauge(d).unwrap();
        let n = b.outer_normal(x).unwrap();
        assert!((n - v2(1.0, 1.0).normalize()).norm() < 0.1);
        assert!(matches!(ConvexBody::lp_ball(0.5), Err(Error::InvalidExponent(_))));
        assert!(matches!(ConvexBody::lp_ball(2.0).unwrap().shape(), Shape::Disk { .. }));
    }

    #[test]
    fn polygon_validation() {
        assert!(ConvexBody::polygon(vec![v2(0.0, 0.0), v2(0.0, 1.0), v2(1.0, 0.0)]).is_err());
        let t = ConvexBody::polygon(vec![v2(0.0, 0.0), v2(1.0, 0.0), v2(0.0, 1.0)]).unwrap();
        assert!(!t.is_symmetric());
        assert!(t.contains(v2(0.2, 0.2), 0.0));
        assert!(!t.contains(v2(0.6, 0.6), 1e-9));
    }
}
