use super::function::StringFunction;
use crate::error::{Error, Result};
use crate::geometry::numeric::brent_known;
use crate::geometry::vec::{angle_of, cross, unit_at, wrap_angle};
use crate::geometry::{ConvexBody, V2};
use rayon::prelude::*;
use std::collections::HashSet;
use std::f64::consts::{PI, TAU};

/// Caustic, metric body and string length of a string construction.
#[derive(Debug, Clone, PartialEq)]
pub struct StringSpec {
    pub caustic: ConvexBody,
    pub metric: ConvexBody,
    pub length: f64,
}

impl StringSpec {
    /// Checks `L > Per_{h_T}(C)` with a margin of `1e-9`.
    pub fn new(caustic: ConvexBody, metric: ConvexBody, length: f64) -> Result<Self> {
        let spec = StringSpec { caustic, metric, length };
        spec.validate()?;
        Ok(spec)
    }

    pub fn perimeter(&self) -> Result<f64> {
        crate::geometry::minkowski_perimeter(&self.caustic, &self.metric)
    }

    pub fn validate(&self) -> Result<f64> {
        let p = self.perimeter()?;
        if !(self.length > p + 1e-9) {
            return Err(Error::InvalidStringLength { length: self.length, perimeter: p });
        }
        Ok(p)
    }
}

/// Distance from `center` to `∂C` along the unit direction `d`.
fn radial_extent(c: &ConvexBody, center: V2, d: V2) -> f64 {
    if let Some(v) = c.vertices() {
        match v.len() {
            1 => return 0.0,
            2 => {
                let e = v[1] - v[0];
                if cross(d, e).abs() > 1e-12 * e.norm() {
                    return 0.0;
                }
                return v.iter().map(|x| (x - center).dot(&d)).fold(0.0, f64::max);
            }
            _ => {}
        }
    }
    1.0 / c.gauge_about_center(center + d)
}

struct RaySolver<'a> {
    f: &'a StringFunction,
    center: V2,
    length: f64,
    perimeter: f64,
}

struct Sample {
    theta: f64,
    point: V2,
    normal: V2,
}

impl RaySolver<'_> {
    /// Level-set point on the ray `origin + r·d`, `r > 0`, where `origin` lies on `∂C`.
    fn solve_from(&self, origin: V2, d: V2) -> Result<Sample> {
        let hd = self.f.metric().h(d);
        let g = |r: f64| match self.f.value(origin + r * d) {
            Ok(v) => v - self.length,
            Err(_) => f64::NAN,
        };
        let lo = 1e-9 * (self.length - self.perimeter) / (2.0 * hd);
        let hi = self.length / hd;
        let r = brent_known(g, lo, hi, g(lo), g(hi), 1e-13 * hi.max(1.0))
            .ok_or_else(|| Error::Numerical("no level-set crossing on an edge line".into()))?;
        let point = origin + r * d;
        let grad = self.f.gradient(point)?;
        let theta = angle_of(point - self.center).rem_euclid(TAU);
        Ok(Sample { theta, point, normal: grad / grad.norm() })
    }

    fn solve(&self, theta: f64) -> Result<Sample> {
        let d = unit_at(theta);
        let metric = self.f.metric();
        let hd = metric.h(d);
        let ext = radial_extent(self.f.caustic(), self.center, d);
        let g = |r: f64| match self.f.value(self.center + r * d) {
            Ok(v) => v - self.length,
            Err(_) => f64::NAN,
        };
        let mut eps = 1e-3 * (self.length - self.perimeter) / (2.0 * hd);
        let mut lo = ext + eps;
        let mut glo = g(lo);
        let mut tries = 0;
        while !(glo < 0.0) && tries < 12 {
            eps *= 0.1;
            lo = ext + eps;
            glo = g(lo);
            tries += 1;
        }
        // f ≥ 2·h_T(q − x) for every x ∈ C, so this radius already has f ≥ L
        let hi = (ext + self.length / (2.0 * hd)).max(lo * 1.000001);
        let ghi = g(hi);
        let xtol = 1e-13 * hi.max(1.0);
        let r = brent_known(g, lo, hi, glo, ghi, xtol)
            .ok_or_else(|| Error::Numerical(format!("no level-set crossing along direction {theta}")))?;
        let point = self.center + r * d;
        let grad = self.f.gradient(point)?;
        Ok(Sample { theta, point, normal: grad / grad.norm() })
    }
}

const INTERPOLATION_TOL: f64 = 1e-11;

fn build(samples: &[Sample]) -> Result<ConvexBody> {
    let points: Vec<V2> = samples.iter().map(|s| s.point).collect();
    let normals: Vec<V2> = samples.iter().map(|s| s.normal).collect();
    ConvexBody::from_boundary_samples(&points, &normals)
}

fn junction_samples(solver: &RaySolver) -> Result<Vec<Sample>> {
    let Some(v) = solver.f.caustic().vertices() else {
        return Ok(Vec::new());
    };
    let n = v.len();
    if n < 3 {
        return Ok(Vec::new());
    }
    let mut out = Vec::with_capacity(2 * n);
    for i in 0..n {
        let (a, b) = (v[i], v[(i + 1) % n]);
        let d = (b - a) / (b - a).norm();
        out.push(solver.solve_from(b, d)?);
        out.push(solver.solve_from(a, -d)?);
    }
    Ok(out)
}

/// Extracts the level set `{f = L}` by radial root finding from the centre of `C`.
///
/// Rays are refined where consecutive outer normals turn by more than four grid steps, so
/// corners of polygonal tables are located to about `1e-10`, and then wherever the interpolated
/// boundary misses a freshly solved midpoint by more than `1e-11` (relative). Polygonal results come back as
/// polygons, everything else as a sampled body.
pub fn string_construct(spec: &StringSpec, resolution: usize) -> Result<ConvexBody> {
    if resolution < 16 {
        return Err(Error::InvalidArgument(format!("resolution {resolution} is below 16")));
    }
    let perimeter = spec.validate()?;
    let f = StringFunction::new(&spec.caustic, &spec.metric)?;
    let solver = RaySolver { f: &f, center: spec.caustic.center(), length: spec.length, perimeter };
    let mirror = spec.caustic.is_symmetric() && spec.metric.is_symmetric();
    let base: Vec<f64> = if mirror {
        let half = resolution.div_ceil(2);
        (0..half).map(|j| PI * j as f64 / half as f64).collect()
    } else {
        (0..resolution).map(|j| TAU * j as f64 / resolution as f64).collect()
    };
    let mut samples = base.par_iter().map(|&th| solver.solve(th)).collect::<Result<Vec<_>>>()?;
    if mirror {
        let other: Vec<Sample> = samples
            .iter()
            .map(|s| Sample { theta: s.theta + PI, point: -s.point, normal: -s.normal })
            .collect();
        samples.extend(other);
    }

    // the table's curvature jumps where ∂K crosses an edge line of a polygonal caustic
    samples.extend(junction_samples(&solver)?);
    samples.sort_by(|a, b| a.theta.total_cmp(&b.theta));

    let scale = samples.iter().map(|s| s.point.norm()).fold(0.0, f64::max);
    let max_turn = 4.0 * TAU / resolution as f64;
    for _ in 0..64 {
        let n = samples.len();
        let mids: Vec<f64> = (0..n)
            .filter_map(|i| {
                let a = &samples[i];
                let b = &samples[(i + 1) % n];
                let turn = wrap_angle(angle_of(b.normal) - angle_of(a.normal), -PI).abs();
                let th_b = if i + 1 == n { b.theta + TAU } else { b.theta };
                let split = turn > max_turn
                    && (b.point - a.point).norm() > 1e-10 * scale
                    && th_b - a.theta > 1e-15;
                split.then(|| 0.5 * (a.theta + th_b))
            })
            .collect();
        if mids.is_empty() {
            break;
        }
        let extra = mids.par_iter().map(|&th| solver.solve(th)).collect::<Result<Vec<_>>>()?;
        samples.extend(extra.into_iter().map(|mut s| {
            if s.theta >= TAU {
                s.theta -= TAU;
            }
            s
        }));
        samples.sort_by(|a, b| a.theta.total_cmp(&b.theta));
    }

    // interpolation check: where the sampled body misses the solved midpoint, split the gap.
    // Hermite gaps depend only on their end knots, so a gap is rechecked only after a split.
    let cap = 16 * resolution;
    let mut body = build(&samples)?;
    let mut fresh: HashSet<u64> = samples.iter().map(|s| s.theta.to_bits()).collect();
    for _ in 0..24 {
        let n = samples.len();
        let candidates: Vec<f64> = (0..n)
            .filter_map(|i| {
                let a = &samples[i];
                let b = &samples[(i + 1) % n];
                if !fresh.contains(&a.theta.to_bits()) && !fresh.contains(&b.theta.to_bits()) {
                    return None;
                }
                let th_b = if i + 1 == n { b.theta + TAU } else { b.theta };
                let curved = (b.normal - a.normal).norm() > 1e-12 && (b.point - a.point).norm() > 1e-10 * scale;
                curved.then(|| 0.5 * (a.theta + th_b))
            })
            .collect();
        let extra: Vec<Sample> = candidates
            .par_iter()
            .map(|&th| solver.solve(th))
            .collect::<Result<Vec<_>>>()?
            .into_iter()
            .filter(|s| {
                let g = body.gauge_about_center(s.point);
                (g - 1.0).abs() * (s.point - body.center()).norm() > INTERPOLATION_TOL * scale
            })
            .map(|mut s| {
                if s.theta >= TAU {
                    s.theta -= TAU;
                }
                s
            })
            .collect();
        if extra.is_empty() || samples.len() + extra.len() > cap {
            break;
        }
        fresh = extra.iter().map(|s| s.theta.to_bits()).collect();
        samples.extend(extra);
        samples.sort_by(|a, b| a.theta.total_cmp(&b.theta));
        body = build(&samples)?;
    }
    if let crate::geometry::Shape::Sampled(s) = body.shape() {
        if s.is_polygonal() {
            return ConvexBody::polygon(s.corner_points());
        }
    }
    Ok(body)
}
