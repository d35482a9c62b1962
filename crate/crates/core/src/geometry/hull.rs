use super::vec::{cross, V2};

/// Andrew's monotone chain; returns counter-clockwise hull vertices without collinear points.
pub fn convex_hull(points: &[V2]) -> Vec<V2> {
    let mut p: Vec<V2> = points.iter().copied().filter(|v| v.x.is_finite() && v.y.is_finite()).collect();
    p.sort_by(|a, b| a.x.partial_cmp(&b.x).unwrap().then(a.y.partial_cmp(&b.y).unwrap()));
    p.dedup();
    if p.len() <= 2 {
        return p;
    }
    let scale = p.iter().map(|v| v.norm()).fold(0.0, f64::max).max(1e-300);
    let eps = 1e-14 * scale * scale;
    let mut lower: Vec<V2> = Vec::new();
    for &v in &p {
        while lower.len() >= 2 && cross(lower[lower.len() - 1] - lower[lower.len() - 2], v - lower[lower.len() - 2]) <= eps {
            lower.pop();
        }
        lower.push(v);
    }
    let mut upper: Vec<V2> = Vec::new();
    for &v in p.iter().rev() {
        while upper.len() >= 2 && cross(upper[upper.len() - 1] - upper[upper.len() - 2], v - upper[upper.len() - 2]) <= eps {
            upper.pop();
        }
        upper.push(v);
    }
    lower.pop();
    upper.pop();
    lower.extend(upper);
    if lower.len() == 2 && lower[0] == lower[1] {
        lower.pop();
    }
    lower
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;

    #[test]
    fn hull_of_square_with_interior() {
        let h = convex_hull(&[v2(0.0, 0.0), v2(1.0, 0.0), v2(1.0, 1.0), v2(0.0, 1.0), v2(0.5, 0.5), v2(0.5, 0.0)]);
        assert_eq!(h.len(), 4);
    }

    #[test]
    fn hull_of_collinear_is_segment() {
        let h = convex_hull(&[v2(-0.5, 0.0), v2(0.0, 0.0), v2(0.5, 0.0)]);
        assert_eq!(h, vec![v2(-0.5, 0.0), v2(0.5, 0.0)]);
    }
}
