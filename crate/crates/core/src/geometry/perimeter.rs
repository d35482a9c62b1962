use super::body::ConvexBody;
use super::vec::{rot_m90, V2};
use crate::error::{Error, Result};

/// `Per_{h_T}(D)`: the `h_T`-length of `∂D` (segments traversed twice, points have length 0).
pub fn minkowski_perimeter(d: &ConvexBody, t: &ConvexBody) -> Result<f64> {
    if !t.is_symmetric() {
        return Err(Error::UnsupportedMetric("perimeter needs a centrally symmetric metric body".into()));
    }
    if let Some(v) = d.vertices() {
        let n = v.len();
        if n == 1 {
            return Ok(0.0);
        }
        return Ok((0..n).map(|i| t.h(v[(i + 1) % n] - v[i])).sum());
    }
    Ok(d.boundary_length(&|x: V2| t.h(x)))
}

/// Mixed area `V(A, B) = ½ ∮_{∂B} h_A(n_B) ds`.
pub fn mixed_area(a: &ConvexBody, b: &ConvexBody) -> f64 {
    if let Some(v) = b.vertices() {
        let n = v.len();
        if n == 1 {
            return 0.0;
        }
        return 0.5 * (0..n).map(|i| a.h(rot_m90(v[(i + 1) % n] - v[i]))).sum::<f64>();
    }
    0.5 * b.boundary_length(&|x: V2| a.h(rot_m90(x)))
}

/// `2·V(D, JT)` with `J` the quarter turn; equals `Per_{h_T}(D)` for symmetric `T`.
pub fn mixed_area_perimeter(d: &ConvexBody, t: &ConvexBody) -> Result<f64> {
    if !t.is_symmetric() {
        return Err(Error::UnsupportedMetric("perimeter needs a centrally symmetric metric body".into()));
    }
    if let Some(v) = t.vertices() {
        let n = v.len();
        return Ok((0..n).map(|i| d.h(v[(i + 1) % n] - v[i])).sum());
    }
    Ok(t.boundary_length(&|x: V2| d.h(x)))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;

    #[test]
    fn perimeters() {
        let disk = ConvexBody::disk(1.0).unwrap();
        let sq = ConvexBody::polygon(vec![v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0)]).unwrap();
        assert!((minkowski_perimeter(&sq, &disk).unwrap() - 4.0).abs() < 1e-15);
        let l1 = ConvexBody::lp_ball(1.0).unwrap();
        let a = minkowski_perimeter(&disk, &l1).unwrap();
        let b = minkowski_perimeter(&l1, &disk).unwrap();
        assert!((a - 4.0 * 2f64.sqrt()).abs() < 1e-12 && (b - a).abs() < 1e-12);
        let seg = ConvexBody::segment(v2(-1.0, 0.0), v2(1.0, 0.0));
        assert!((minkowski_perimeter(&seg, &disk).unwrap() - 4.0).abs() < 1e-15);
        assert_eq!(minkowski_perimeter(&ConvexBody::point(v2(1.0, 1.0)), &disk).unwrap(), 0.0);
        assert!((mixed_area(&disk, &disk) - std::f64::consts::PI).abs() < 1e-12);
        let off = ConvexBody::disk_at(v2(1.0, 0.0), 1.0).unwrap();
        assert!(minkowski_perimeter(&disk, &off).is_err());
    }

    #[test]
    fn mixed_area_route_agrees_on_polygons() {
        let tri = ConvexBody::polygon(vec![v2(0.0, 0.0), v2(2.0, 0.1), v2(0.3, 1.4)]).unwrap();
        let hex = ConvexBody::lp_ball(1.0).unwrap();
        let a = minkowski_perimeter(&tri, &hex).unwrap();
        let b = mixed_area_perimeter(&tri, &hex).unwrap();
        assert!((a - b).abs() < 1e-12, "{a} {b}");
    }
}
