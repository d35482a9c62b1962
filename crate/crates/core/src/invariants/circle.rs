use super::spline::PeriodicSpline;
use crate::billiard::{annulus_coords, twist_map, BilliardConfig};
use crate::error::Result;
use crate::geometry::vec::wrap_from;
use crate::geometry::{tangent_points, ConvexBody, OrientedLine};
use rayon::prelude::*;

/// The graph `s = s(t)` traced in `A_K` by the positive tangent lines of a caustic.
#[derive(Debug, Clone)]
pub struct InvariantCircle {
    t: Vec<f64>,
    s: Vec<f64>,
    period: f64,
    spline: PeriodicSpline,
}

impl InvariantCircle {
    /// Builds the circle from samples; `t` is reduced modulo `period` and sorted.
    pub fn from_samples(mut pts: Vec<(f64, f64)>, period: f64) -> Self {
        for p in pts.iter_mut() {
            p.0 = wrap_from(p.0, 0.0, period);
        }
        pts.sort_by(|a, b| a.0.total_cmp(&b.0));
        pts.dedup_by(|a, b| (a.0 - b.0).abs() <= 1e-14 * period);
        let (t, s): (Vec<f64>, Vec<f64>) = pts.into_iter().unzip();
        let spline = PeriodicSpline::new(t.clone(), s.clone(), period);
        InvariantCircle { t, s, period, spline }
    }

    pub fn t(&self) -> &[f64] {
        &self.t
    }

    pub fn s(&self) -> &[f64] {
        &self.s
    }

    pub fn period(&self) -> f64 {
        self.period
    }

    pub fn len(&self) -> usize {
        self.t.len()
    }

    pub fn is_empty(&self) -> bool {
        self.t.is_empty()
    }

    /// Interpolated `s(t)`.
    pub fn value(&self, t: f64) -> f64 {
        self.spline.eval(t)
    }

    /// Largest difference quotient between neighbouring samples.
    pub fn lipschitz_bound(&self) -> f64 {
        let n = self.t.len();
        (0..n)
            .map(|i| {
                let j = (i + 1) % n;
                let dt = if j == 0 { self.t[0] + self.period - self.t[i] } else { self.t[j] - self.t[i] };
                (self.s[j] - self.s[i]).abs() / dt
            })
            .fold(0.0, f64::max)
    }

    /// Largest distance, along `s`, from the image of a sample point to the interpolated graph.
    pub fn invariance_error(&self, config: &BilliardConfig, stride: usize) -> Result<f64> {
        let idx: Vec<usize> = (0..self.t.len()).step_by(stride.max(1)).collect();
        let errs = idx
            .par_iter()
            .map(|&i| {
                let (t1, s1) = twist_map(config, self.t[i], self.s[i])?;
                Ok((s1 - self.value(t1)).abs())
            })
            .collect::<Result<Vec<f64>>>()?;
        Ok(errs.into_iter().fold(0.0, f64::max))
    }
}

/// Annulus image of the positive tangent lines to `C` from `resolution` points of `∂K`.
pub fn invariant_circle(config: &BilliardConfig, c: &ConvexBody, resolution: usize) -> Result<InvariantCircle> {
    let samples = config.param_k().uniform_samples(resolution);
    let pts = samples
        .par_iter()
        .map(|(t, s)| {
            let tp = tangent_points(c, s.point)?;
            let line = OrientedLine::new(s.point, tp.e - s.point);
            let a = annulus_coords(config, &line)?;
            // keep the grid parameter; the recomputed one differs only by rounding
            Ok((*t, a.s))
        })
        .collect::<Result<Vec<_>>>()?;
    Ok(InvariantCircle::from_samples(pts, config.perimeter()))
}

/// `−∮ s dt` by the trapezoidal rule on the sample grid.
pub fn perimeter_via_circle(circle: &InvariantCircle) -> f64 {
    let n = circle.t.len();
    let mut sum = 0.0;
    for i in 0..n {
        let j = (i + 1) % n;
        let dt = if j == 0 { circle.t[0] + circle.period - circle.t[i] } else { circle.t[j] - circle.t[i] };
        sum += 0.5 * (circle.s[i] + circle.s[j]) * dt;
    }
    -sum
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn circle_of_concentric_disks() {
        let k = ConvexBody::disk(2.0).unwrap();
        let c = ConvexBody::disk(1.0).unwrap();
        let cfg = BilliardConfig::new(&k, &c, 256).unwrap();
        let circ = invariant_circle(&cfg, &c, 128).unwrap();
        assert!(circ.s().iter().all(|s| (s + 0.5).abs() < 1e-12));
        assert!((perimeter_via_circle(&circ) - std::f64::consts::TAU).abs() < 1e-10);
        assert!(circ.invariance_error(&cfg, 8).unwrap() < 1e-12);
    }
}
