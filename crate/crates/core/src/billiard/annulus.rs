use super::config::BilliardConfig;
use super::maps::{billiard_map, chord, s_value, TANGENCY_GUARD};
use crate::error::{Error, Result};
use crate::geometry::numeric::brent_known;
use crate::geometry::vec::{angle_of, unit_at, wrap_from};
use crate::geometry::OrientedLine;
use std::f64::consts::FRAC_PI_2;

/// Point of the phase annulus `A_K = ℝ/Pℤ × (−1, 1)`, with an unwrapped copy of `t`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct AnnulusPoint {
    pub t: f64,
    pub s: f64,
    pub lift: f64,
}

/// Annulus coordinates `(t, s)` of a transversal line of `𝓛(K)`: `q = γ_K(t)` is the entry
/// point and `s = −⟨∇h_T(v), τ_K(q)⟩`.
pub fn annulus_coords(config: &BilliardConfig, line: &OrientedLine) -> Result<AnnulusPoint> {
    let (a, _) = chord(config.table(), line)?;
    let q = line.point_at(a);
    let s = s_value(config.table(), config.geometry(), q, line.dir)?;
    if !(s.abs() < 1.0 - TANGENCY_GUARD) {
        return Err(Error::TangentLine(s));
    }
    let t = config.param_k().t_of(q);
    Ok(AnnulusPoint { t, s, lift: t })
}

/// Inverse of [`annulus_coords`]: the line based at `γ_K(t)` with the prescribed `s`.
pub fn line_from_annulus(config: &BilliardConfig, t: f64, s: f64) -> Result<OrientedLine> {
    if !(s.abs() < 1.0) {
        return Err(Error::TangentLine(s));
    }
    let sample = config.param_k().sample(t);
    let tau = sample.tangent;
    let geom = config.geometry();
    let phi_n = angle_of(sample.normal);
    let f = |psi: f64| -geom.support_point(unit_at(psi)).dot(&tau) - s;
    let (a, b) = (phi_n + FRAC_PI_2, phi_n + 3.0 * FRAC_PI_2);
    let psi = brent_known(f, a, b, -1.0 - s, 1.0 - s, 1e-15)
        .ok_or_else(|| Error::Numerical("annulus inversion failed".into()))?;
    Ok(OrientedLine::new(sample.point, unit_at(psi)))
}

/// The billiard map in annulus coordinates; `t'` is returned in `[0, P)`.
pub fn twist_map(config: &BilliardConfig, t: f64, s: f64) -> Result<(f64, f64)> {
    let l = line_from_annulus(config, t, s)?;
    let m = billiard_map(config, &l)?;
    let a = annulus_coords(config, &m)?;
    Ok((a.t, a.s))
}

/// Lifted twist map: `t'` is the representative of the image closest above `t`.
pub fn twist_map_lifted(config: &BilliardConfig, t: f64, s: f64) -> Result<(f64, f64)> {
    let (t1, s1) = twist_map(config, t, s)?;
    let p = config.perimeter();
    Ok((t + wrap_from(t1 - t, 0.0, p), s1))
}

/// Generating function `h(r, r') = −h_T(γ_K(r) − γ_K(r'))`.
pub fn generating_function(config: &BilliardConfig, r: f64, r2: f64) -> f64 {
    let pk = config.param_k();
    -config.geometry().h(pk.point(r) - pk.point(r2))
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;
    use std::f64::consts::PI;
    use crate::geometry::ConvexBody;

    #[test]
    fn disk_annulus_round_trip() {
        let d = ConvexBody::disk(1.0).unwrap();
        let cfg = BilliardConfig::new(&d, &d, 256).unwrap();
        let l = OrientedLine::new(v2(1.0, 0.0), v2(-1.0, 1.0));
        let a = annulus_coords(&cfg, &l).unwrap();
        assert!(a.t.abs() < 1e-12);
        assert!((a.s + 0.5f64.sqrt()).abs() < 1e-12);
        let back = line_from_annulus(&cfg, a.t, a.s).unwrap();
        assert!(back.distance(&l) < 1e-12);
        assert!((generating_function(&cfg, 0.0, PI) + 2.0).abs() < 1e-12);
    }

    #[test]
    fn limits_of_s() {
        let e = ConvexBody::ellipse(3.0, 2.0).unwrap();
        let t = ConvexBody::lp_ball(1.5).unwrap();
        let cfg = BilliardConfig::new(&e, &t, 256).unwrap();
        let mut prev = -1.0;
        for k in 1..20 {
            let s = -1.0 + k as f64 * 0.1;
            let l = line_from_annulus(&cfg, 1.3, s).unwrap();
            let a = annulus_coords(&cfg, &l).unwrap();
            assert!((a.s - s).abs() < 1e-11 && (a.t - 1.3).abs() < 1e-10);
            assert!(a.s > prev);
            prev = a.s;
        }
    }
}
