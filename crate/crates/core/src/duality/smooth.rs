use crate::error::{Error, Result};
use crate::geometry::vec::{angle_of, cross, rot90, rot_m90, wrap_angle};
use crate::geometry::{tangent_points, BoundaryParam, ConvexBody, V2};
use crate::string::StringFunction;
use rayon::prelude::*;
use std::f64::consts::{PI, TAU};

/// Euclidean tangency data of a caustic `C` seen from a boundary point `q` of the table.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct TangencyData {
    pub q: V2,
    pub e: V2,
    pub b: V2,
    /// `|q − e| + |q − b|`.
    pub length: f64,
    /// Angle of incidence, `cos θ = ⟨τ_K(q), (e − q)/|e − q|⟩`.
    pub theta: f64,
    /// `(e − b)/L`.
    pub w: V2,
    /// Outer unit normal of the table at `q`.
    pub normal: V2,
}

pub fn tangency_data(k: &ConvexBody, c: &ConvexBody, q: V2) -> Result<TangencyData> {
    let tp = tangent_points(c, q)?;
    let (e, b) = (tp.e, tp.b);
    let length = (q - e).norm() + (q - b).norm();
    let normal = k.outer_normal(q)?;
    let u = (e - q) / (e - q).norm();
    let theta = rot90(normal).dot(&u).clamp(-1.0, 1.0).acos();
    Ok(TangencyData { q, e, b, length, theta, w: (e - b) / length, normal })
}

/// Derivatives `(e′, b′, L′)` with respect to counter-clockwise Euclidean arclength on `∂K`.
pub fn tangency_derivatives(k: &ConvexBody, c: &ConvexBody, q: V2) -> Result<(V2, V2, f64)> {
    let td = tangency_data(k, c, q)?;
    let tau_e = (td.e - q) / (td.e - q).norm();
    let tau_b = (q - td.b) / (q - td.b).norm();
    let curv = |tau: V2| {
        c.curvature(rot_m90(tau))
            .filter(|k| k.is_finite() && *k > 0.0)
            .ok_or_else(|| Error::UnsupportedCaustic("caustic has no positive curvature data".into()))
    };
    let (ke, kb) = (curv(tau_e)?, curv(tau_b)?);
    let s = td.theta.sin();
    let de = s / (ke * (td.e - q).norm());
    let db = s / (kb * (td.b - q).norm());
    Ok((de * tau_e, db * tau_b, de - db))
}

fn check_string_constant(c: &ConvexBody, param: &BoundaryParam) -> Result<()> {
    let f = StringFunction::new(c, &ConvexBody::disk(1.0)?)?;
    let vals = param
        .uniform_samples(256)
        .par_iter()
        .map(|(_, s)| f.value(s.point))
        .collect::<Result<Vec<f64>>>()?;
    let lo = vals.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = vals.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    if hi - lo > 1e-6 * hi {
        return Err(Error::NotACaustic(hi - lo));
    }
    Ok(())
}

/// Tangency data at `m` points of `∂K`, equally spaced in Euclidean arclength from the first axis.
pub fn dual_curve(k: &ConvexBody, c: &ConvexBody, m: usize) -> Result<Vec<TangencyData>> {
    let param = BoundaryParam::new(k, &ConvexBody::disk(1.0)?, m.max(16))?;
    check_string_constant(c, &param)?;
    param.uniform_samples(m).par_iter().map(|(_, s)| tangency_data(k, c, s.point)).collect()
}

/// Dual caustic of a Euclidean caustic `C` of `K`, from `resolution` samples of `w(q)`.
///
/// A smooth, strictly convex `C` yields a sampled body whose outer normal at `w(q)` is
/// `τ_K(q)`; any other caustic yields the convex hull of the samples.
pub fn dual_caustic_smooth(k: &ConvexBody, c: &ConvexBody, resolution: usize) -> Result<ConvexBody> {
    let data = dual_curve(k, c, resolution)?;
    let w: Vec<V2> = data.iter().map(|d| d.w).collect();
    if c.is_smooth() && c.is_strictly_convex() {
        let n = w.len();
        let mut turning = 0.0;
        for i in 0..n {
            let a = w[(i + 1) % n] - w[i];
            let b = w[(i + 2) % n] - w[(i + 1) % n];
            if cross(a, b) < -1e-12 * a.norm() * b.norm() {
                return Err(Error::Numerical("dual curve is not convex".into()));
            }
            turning += wrap_angle(angle_of(b) - angle_of(a), -PI);
        }
        if (turning - TAU).abs() > 1e-3 {
            return Err(Error::Numerical(format!("dual curve turns by {turning}")));
        }
        let normals: Vec<V2> = data.iter().map(|d| rot90(d.normal)).collect();
        return ConvexBody::from_boundary_samples(&w, &normals);
    }
    ConvexBody::hull_of(&w)
}
