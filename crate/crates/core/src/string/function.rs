use crate::error::{Error, Result};
use crate::geometry::tangent::polygon_tangent_indices;
use crate::geometry::{minkowski_perimeter, tangent_points, BoundaryParam, ConvexBody, V2};

/// `f(q) = Per_{h_T}(Conv(q, C))` for a fixed caustic `C` and metric body `T`.
///
/// Building one of these precomputes `Per_{h_T}(C)` and, for curved `C`, an `h_T`-arclength
/// parametrisation of `∂C`; evaluate many points through the same value.
#[derive(Debug, Clone)]
pub struct StringFunction {
    caustic: ConvexBody,
    metric: ConvexBody,
    perimeter: f64,
    param: Option<BoundaryParam>,
}

impl StringFunction {
    pub fn new(caustic: &ConvexBody, metric: &ConvexBody) -> Result<Self> {
        let perimeter = minkowski_perimeter(caustic, metric)?;
        let param = if caustic.vertices().is_some() {
            None
        } else {
            Some(BoundaryParam::new(caustic, metric, 512)?)
        };
        Ok(StringFunction { caustic: caustic.clone(), metric: metric.clone(), perimeter, param })
    }

    pub fn caustic(&self) -> &ConvexBody {
        &self.caustic
    }

    pub fn metric(&self) -> &ConvexBody {
        &self.metric
    }

    /// `Per_{h_T}(C)`, with segments counted twice.
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// Tangency points `(e, b)` of `C` seen from `q`.
    pub fn tangency(&self, q: V2) -> Result<(V2, V2)> {
        let tp = tangent_points(&self.caustic, q)?;
        Ok((tp.e, tp.b))
    }

    /// `h_T`-length of the boundary arc of `C` running counter-clockwise from `e` to `b`.
    fn far_arc(&self, q: V2, e: V2, b: V2) -> Result<f64> {
        if let Some(v) = self.caustic.vertices() {
            let n = v.len();
            if n == 1 {
                return Ok(0.0);
            }
            let (ie, ib) = polygon_tangent_indices(v, q)?;
            if ie == ib {
                return Ok(self.perimeter);
            }
            let mut sum = 0.0;
            let mut i = ie;
            while i != ib {
                let j = (i + 1) % n;
                sum += self.metric.h(v[j] - v[i]);
                i = j;
            }
            return Ok(sum);
        }
        let param = self.param.as_ref().unwrap();
        let p = self.perimeter;
        let near = (param.t_of(e) - param.t_of(b)).rem_euclid(p);
        Ok(p - near)
    }

    pub fn value(&self, q: V2) -> Result<f64> {
        let (e, b) = self.tangency(q)?;
        let far = self.far_arc(q, e, b)?;
        Ok(self.metric.h(e - q) + far + self.metric.h(q - b))
    }

    /// `∇f(q) = ∇h_T(q − b) + ∇h_T(q − e)`, a sum of two boundary points of `T`.
    pub fn gradient(&self, q: V2) -> Result<V2> {
        let (e, b) = self.tangency(q)?;
        Ok(self.metric.support_point(q - b) + self.metric.support_point(q - e))
    }
}

/// `Per_{h_T}(Conv(q, C))`.
pub fn string_length(c: &ConvexBody, t: &ConvexBody, q: V2) -> Result<f64> {
    StringFunction::new(c, t)?.value(q)
}

/// Gradient of [`string_length`] in `q`; requires a strictly convex `T`.
pub fn string_gradient(c: &ConvexBody, t: &ConvexBody, q: V2) -> Result<V2> {
    if !t.is_strictly_convex() {
        return Err(Error::UnsupportedMetric("gradient needs a strictly convex metric body".into()));
    }
    StringFunction::new(c, t)?.gradient(q)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;

    #[test]
    fn point_and_segment() {
        let disk = ConvexBody::disk(1.0).unwrap();
        let o = ConvexBody::point(v2(0.0, 0.0));
        let q = v2(0.6, -1.1);
        assert!((string_length(&o, &disk, q).unwrap() - 2.0 * q.norm()).abs() < 1e-14);
        let g = string_gradient(&o, &disk, q).unwrap();
        assert!((g - 2.0 * q / q.norm()).norm() < 1e-14);

        let seg = ConvexBody::segment(v2(-1.0, 0.0), v2(1.0, 0.0));
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        assert!((string_length(&seg, &l1, v2(0.0, 2.0)).unwrap() - 6.0).abs() < 1e-14);
        let f = string_length(&seg, &disk, q).unwrap();
        let want = (q - v2(1.0, 0.0)).norm() + (q + v2(1.0, 0.0)).norm() + 2.0;
        assert!((f - want).abs() < 1e-14);
        assert!((string_length(&seg, &disk, v2(3.0, 0.0)).unwrap() - 8.0).abs() < 1e-14);
        assert!(string_length(&seg, &disk, v2(0.2, 0.0)).is_err());
    }

    #[test]
    fn disk_caustic_closed_form() {
        // tangents from distance d to the unit circle: 2√(d²−1) + (2π − 2 arccos(1/d))
        let disk = ConvexBody::disk(1.0).unwrap();
        let sf = StringFunction::new(&disk, &disk).unwrap();
        for (d, ang) in [(2.0, 0.3), (1.2, 2.0), (5.0, -1.0)] {
            let q = d * v2(f64::cos(ang), f64::sin(ang));
            let want = 2.0 * (d * d - 1.0f64).sqrt() + std::f64::consts::TAU - 2.0 * (1.0 / d).acos();
            assert!((sf.value(q).unwrap() - want).abs() < 1e-11, "{d}");
            let theta = (1.0 / d).asin();
            assert!((sf.gradient(q).unwrap().norm() - 2.0 * theta.cos()).abs() < 1e-12);
        }
    }
}
