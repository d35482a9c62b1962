use super::construct::StringSpec;
use super::function::StringFunction;
use crate::billiard::{billiard_map, BilliardConfig};
use crate::error::{Error, Result};
use crate::geometry::vec::rot_m90;
use crate::geometry::{ConvexBody, OrientedLine};
use rayon::prelude::*;

/// Outcome of [`verify_caustic`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct CausticReport {
    pub is_caustic: bool,
    /// `max f − min f` over the sampled boundary of the table.
    pub max_deviation: f64,
    /// Mean string length over the samples.
    pub mean_length: f64,
    /// Largest distance between `C` and the image of a tangent line under the billiard map;
    /// `None` when the billiard map is not defined for the configuration.
    pub dynamic_deviation: Option<f64>,
}

/// How far `C` is from touching `line` on its left side (zero for a positive tangent line).
pub fn line_tangency_error(c: &ConvexBody, line: &OrientedLine) -> f64 {
    let nu = rot_m90(line.dir);
    (c.h(nu) - line.base.dot(&nu)).abs()
}

fn check_inside(table: &ConvexBody, c: &ConvexBody) -> Result<()> {
    let pts = match c.vertices() {
        Some(v) => v.to_vec(),
        None => c.boundary_points(256),
    };
    if pts.iter().any(|&x| table.gauge_about_center(x) >= 1.0) {
        return Err(Error::CausticOutsideTable);
    }
    Ok(())
}

/// Checks that the string length `f` is constant on `∂K`, and reports how well tangency to `C`
/// survives one application of the billiard map.
pub fn verify_caustic(config: &BilliardConfig, c: &ConvexBody, samples: usize, tol: f64) -> Result<CausticReport> {
    check_inside(config.table(), c)?;
    let f = StringFunction::new(c, config.geometry())?;
    let pts = config.param_k().uniform_samples(samples.max(1));
    let values = pts.par_iter().map(|(_, s)| f.value(s.point)).collect::<Result<Vec<f64>>>()?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let mean_length = values.iter().sum::<f64>() / values.len() as f64;

    let dynamic: Result<Vec<f64>> = pts
        .par_iter()
        .map(|(_, s)| {
            let (e, _) = f.tangency(s.point)?;
            let line = OrientedLine::new(s.point, e - s.point);
            let image = billiard_map(config, &line)?;
            Ok(line_tangency_error(c, &image))
        })
        .collect();
    let dynamic_deviation = dynamic.ok().map(|v| v.into_iter().fold(0.0, f64::max));
    Ok(CausticReport { is_caustic: hi - lo <= tol, max_deviation: hi - lo, mean_length, dynamic_deviation })
}

/// `L − Per_{h_T}(C)` of a string specification.
pub fn lazutkin_parameter(spec: &StringSpec) -> Result<f64> {
    Ok(spec.length - spec.perimeter()?)
}

/// Lazutkin parameter of a caustic read off the table: mean of `f` on `∂K` minus `Per_{h_T}(C)`.
pub fn lazutkin_of_table(config: &BilliardConfig, c: &ConvexBody, samples: usize, tol: f64) -> Result<f64> {
    let report = verify_caustic(config, c, samples, tol)?;
    if !report.is_caustic {
        return Err(Error::NotACaustic(report.max_deviation));
    }
    let f = StringFunction::new(c, config.geometry())?;
    Ok(report.mean_length - f.perimeter())
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::vec::v2;

    #[test]
    fn concentric_and_offset_circles() {
        let disk = ConvexBody::disk(1.0).unwrap();
        let k = ConvexBody::disk(2.0).unwrap();
        let cfg = BilliardConfig::new(&k, &disk, 256).unwrap();
        let r = verify_caustic(&cfg, &disk, 64, 1e-8).unwrap();
        assert!(r.is_caustic && r.dynamic_deviation.unwrap() < 1e-10);
        let lz = lazutkin_of_table(&cfg, &disk, 64, 1e-8).unwrap();
        let want = 2.0 * 3f64.sqrt() - std::f64::consts::TAU / 3.0;
        assert!((lz - want).abs() < 1e-9);

        let off = ConvexBody::disk_at(v2(0.3, 0.0), 1.0).unwrap();
        let r = verify_caustic(&cfg, &off, 64, 1e-8).unwrap();
        assert!(!r.is_caustic && r.max_deviation > 0.01);
        let big = ConvexBody::disk(2.5).unwrap();
        assert!(matches!(verify_caustic(&cfg, &big, 8, 1e-8), Err(Error::CausticOutsideTable)));
    }
}
