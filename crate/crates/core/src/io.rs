//! File formats: body and string-spec JSON, trajectory CSV, SVG figures.
//!
//! Bodies are tagged by `variant`:
//!
//! ```json
//! {"variant": "disk", "radius": 2.0, "center": [0.0, 0.0]}
//! {"variant": "ellipse", "a": 3.0, "b": 2.0, "angle": 0.0, "center": [0.0, 0.0]}
//! {"variant": "polygon", "vertices": [[1.0, 0.0], [0.0, 1.0], [-1.0, 0.0]]}
//! {"variant": "lp", "p": 1.5, "scale": 1.0}
//! {"variant": "sampled", "knots": [[phi, sx, sy, ex, ey], ...]}
//! ```
//!
//! A sampled knot is the boundary arc with outer normal angle `phi`, from `(sx, sy)` to
//! `(ex, ey)` (equal points for a strictly convex stretch).

use crate::billiard::{BilliardConfig, TrajectoryRecord};
use crate::error::{Error, Result};
use crate::geometry::vec::wrap_from;
use crate::geometry::{v2, ConvexBody, SampledBody, Shape, V2};
use crate::string::StringSpec;
use serde::{Deserialize, Serialize};
use std::f64::consts::{PI, TAU};
use std::fmt::Write as _;
use std::path::Path;

#[derive(Debug, Clone, PartialEq, Serialize, Deserialize)]
#[serde(tag = "variant", rename_all = "lowercase", deny_unknown_fields)]
pub enum BodyJson {
    Disk {
        radius: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    Ellipse {
        a: f64,
        b: f64,
        #[serde(default)]
        angle: f64,
        #[serde(default)]
        center: [f64; 2],
    },
    Polygon {
        vertices: Vec<[f64; 2]>,
    },
    Lp {
        p: f64,
        #[serde(default = "one")]
        scale: f64,
    },
    Sampled {
        knots: Vec<[f64; 5]>,
    },
}

fn one() -> f64 {
    1.0
}

fn pt(x: V2) -> [f64; 2] {
    [x.x, x.y]
}

fn vec_of(a: [f64; 2]) -> V2 {
    v2(a[0], a[1])
}

impl From<&ConvexBody> for BodyJson {
    fn from(body: &ConvexBody) -> Self {
        match body.shape() {
            Shape::Disk { center, radius } => BodyJson::Disk { radius: *radius, center: pt(*center) },
            Shape::Ellipse { center, shape, .. } => {
                let eig = shape.symmetric_eigen();
                let (i, j) = if eig.eigenvalues[0] >= eig.eigenvalues[1] { (0, 1) } else { (1, 0) };
                let major = eig.eigenvectors.column(i);
                let angle = wrap_from(major[1].atan2(major[0]), -PI / 2.0, PI);
                BodyJson::Ellipse { a: eig.eigenvalues[i], b: eig.eigenvalues[j], angle, center: pt(*center) }
            }
            Shape::Polygon { vertices } => BodyJson::Polygon { vertices: vertices.iter().map(|v| pt(*v)).collect() },
            Shape::LpBall { p, scale } => BodyJson::Lp { p: *p, scale: *scale },
            Shape::Sampled(s) => BodyJson::Sampled {
                knots: (0..s.len())
                    .map(|k| {
                        let (phi, a, b) = s.knot(k);
                        [phi, a.x, a.y, b.x, b.y]
                    })
                    .collect(),
            },
        }
    }
}

impl TryFrom<BodyJson> for ConvexBody {
    type Error = Error;

    fn try_from(j: BodyJson) -> Result<Self> {
        match j {
            BodyJson::Disk { radius, center } => ConvexBody::disk_at(vec_of(center), radius),
            BodyJson::Ellipse { a, b, angle, center } => ConvexBody::ellipse_rotated(vec_of(center), a, b, angle),
            BodyJson::Polygon { vertices } => match vertices.len() {
                0 => Err(Error::Format("vertices: empty vertex list".into())),
                1 => Ok(ConvexBody::point(vec_of(vertices[0]))),
                2 => Ok(ConvexBody::segment(vec_of(vertices[0]), vec_of(vertices[1]))),
                _ => ConvexBody::polygon(vertices.into_iter().map(vec_of).collect()),
            },
            BodyJson::Lp { p, scale } => ConvexBody::lp_ball_scaled(p, scale),
            BodyJson::Sampled { knots } => {
                if knots.len() < 2 {
                    return Err(Error::Format("knots: need at least two knots".into()));
                }
                if knots.iter().flatten().any(|x| !x.is_finite()) {
                    return Err(Error::Format("knots: non-finite entry".into()));
                }
                let phi: Vec<f64> = knots.iter().map(|k| k[0]).collect();
                if phi.windows(2).any(|w| w[1] <= w[0]) || phi[phi.len() - 1] - phi[0] >= TAU {
                    return Err(Error::Format("knots: normal angles must increase within one turn".into()));
                }
                let start = knots.iter().map(|k| v2(k[1], k[2])).collect();
                let end = knots.iter().map(|k| v2(k[3], k[4])).collect();
                Ok(ConvexBody::sampled(SampledBody::from_knots(phi, start, end)))
            }
        }
    }
}

fn format_err(e: serde_json::Error) -> Error {
    Error::Format(e.to_string())
}

fn io_err(path: &Path, e: std::io::Error) -> Error {
    Error::Io(format!("{}: {e}", path.display()))
}

pub fn body_to_json(body: &ConvexBody) -> String {
    serde_json::to_string(&BodyJson::from(body)).expect("body serializes")
}

pub fn body_from_json(text: &str) -> Result<ConvexBody> {
    let j: BodyJson = serde_json::from_str(text).map_err(format_err)?;
    ConvexBody::try_from(j)
}

pub fn read_body(path: &Path) -> Result<ConvexBody> {
    body_from_json(&std::fs::read_to_string(path).map_err(|e| io_err(path, e))?)
}

#[derive(Debug, Clone, Serialize, Deserialize)]
#[serde(deny_unknown_fields)]
pub struct StringSpecJson {
    pub caustic: BodyJson,
    pub metric: BodyJson,
    pub length: f64,
}

pub fn spec_to_json(spec: &StringSpec) -> String {
    let j = StringSpecJson {
        caustic: BodyJson::from(&spec.caustic),
        metric: BodyJson::from(&spec.metric),
        length: spec.length,
    };
    serde_json::to_string_pretty(&j).expect("spec serializes")
}

/// Parses a string spec; `length_override` replaces the stored length when given.
pub fn spec_from_json(text: &str, length_override: Option<f64>) -> Result<StringSpec> {
    let j: StringSpecJson = serde_json::from_str(text).map_err(format_err)?;
    StringSpec::new(
        ConvexBody::try_from(j.caustic)?,
        ConvexBody::try_from(j.metric)?,
        length_override.unwrap_or(j.length),
    )
}

pub fn write_text(path: &Path, text: &str) -> Result<()> {
    std::fs::write(path, text).map_err(|e| io_err(path, e))
}

#[derive(Debug, Serialize)]
struct TrajectoryRow {
    n: usize,
    q1: f64,
    q2: f64,
    p1: f64,
    p2: f64,
    r: f64,
    s: f64,
    seg_len: f64,
}

/// CSV with columns `n, q1, q2, p1, p2, r, s, seg_len`; `r` is the boundary coordinate in `[0, Per)`.
pub fn trajectory_csv(config: &BilliardConfig, rec: &TrajectoryRecord) -> Result<String> {
    let mut w = csv::Writer::from_writer(Vec::new());
    let per = config.perimeter();
    for n in 0..rec.len() {
        w.serialize(TrajectoryRow {
            n,
            q1: rec.impacts[n].x,
            q2: rec.impacts[n].y,
            p1: rec.duals[n].x,
            p2: rec.duals[n].y,
            r: wrap_from(rec.lifts[n], 0.0, per),
            s: rec.s[n],
            seg_len: rec.segment_lengths[n],
        })
        .map_err(|e| Error::Io(e.to_string()))?;
    }
    let bytes = w.into_inner().map_err(|e| Error::Io(e.to_string()))?;
    String::from_utf8(bytes).map_err(|e| Error::Io(e.to_string()))
}

/// A figure: filled bodies plus open polylines (trajectories).
#[derive(Debug, Clone, Default)]
pub struct Scene {
    bodies: Vec<(ConvexBody, String)>,
    polylines: Vec<(Vec<V2>, String)>,
}

const PALETTE: [&str; 6] = ["#1f77b4", "#d62728", "#2ca02c", "#9467bd", "#ff7f0e", "#17becf"];

impl Scene {
    pub fn new() -> Self {
        Self::default()
    }

    pub fn body(mut self, body: &ConvexBody) -> Self {
        let color = PALETTE[self.bodies.len() % PALETTE.len()].to_string();
        self.bodies.push((body.clone(), color));
        self
    }

    pub fn polyline(mut self, points: Vec<V2>) -> Self {
        self.polylines.push((points, "#555555".into()));
        self
    }

    pub fn body_count(&self) -> usize {
        self.bodies.len()
    }

    /// SVG with the y axis pointing up and a 5% margin around everything drawn.
    pub fn to_svg(&self) -> String {
        let outlines: Vec<Vec<V2>> = self.bodies.iter().map(|(b, _)| outline(b)).collect();
        let all = outlines.iter().flatten().chain(self.polylines.iter().flat_map(|(p, _)| p.iter()));
        let (mut lo, mut hi) = (v2(f64::INFINITY, f64::INFINITY), v2(f64::NEG_INFINITY, f64::NEG_INFINITY));
        for p in all {
            lo = lo.inf(p);
            hi = hi.sup(p);
        }
        if !lo.x.is_finite() {
            lo = v2(-1.0, -1.0);
            hi = v2(1.0, 1.0);
        }
        let span = (hi - lo).max().max(1e-9);
        let pad = 0.05 * span;
        let (x0, y0) = (lo.x - pad, -hi.y - pad);
        let (w, h) = (hi.x - lo.x + 2.0 * pad, hi.y - lo.y + 2.0 * pad);
        let stroke = span / 400.0;

        let mut out = String::new();
        let _ = writeln!(
            out,
            r#"<svg xmlns="http://www.w3.org/2000/svg" viewBox="{} {} {} {}" width="800" height="{}">"#,
            fmt(x0),
            fmt(y0),
            fmt(w),
            fmt(h),
            (800.0 * h / w).round()
        );
        for ((_, color), pts) in self.bodies.iter().zip(&outlines) {
            let mut d = String::new();
            for (i, p) in pts.iter().enumerate() {
                let _ = write!(d, "{}{} {} ", if i == 0 { "M" } else { "L" }, fmt(p.x), fmt(-p.y));
            }
            d.push('Z');
            let _ = writeln!(
                out,
                r#"  <path d="{d}" fill="{color}" fill-opacity="0.15" stroke="{color}" stroke-width="{}"/>"#,
                fmt(stroke)
            );
        }
        for (pts, color) in &self.polylines {
            let coords: Vec<String> = pts.iter().map(|p| format!("{},{}", fmt(p.x), fmt(-p.y))).collect();
            let _ = writeln!(
                out,
                r#"  <polyline points="{}" fill="none" stroke="{color}" stroke-width="{}"/>"#,
                coords.join(" "),
                fmt(stroke / 2.0)
            );
        }
        out.push_str("</svg>\n");
        out
    }
}

fn fmt(x: f64) -> String {
    format!("{:.6}", x)
}

fn outline(b: &ConvexBody) -> Vec<V2> {
    match b.vertices() {
        Some(v) => v.to_vec(),
        None => b.boundary_points(720),
    }
}

#[cfg(test)]
mod tests {
    use super::*;

    #[test]
    fn body_round_trips() {
        let bodies = [
            ConvexBody::disk_at(v2(0.5, -1.0), 2.0).unwrap(),
            ConvexBody::ellipse_rotated(v2(0.0, 0.0), 3.0, 2.0, 0.4).unwrap(),
            ConvexBody::polygon(vec![v2(1.0, 0.0), v2(0.0, 1.0), v2(-1.0, -1.0)]).unwrap(),
            ConvexBody::segment(v2(-1.0, 0.0), v2(1.0, 0.0)),
            ConvexBody::lp_ball_scaled(1.5, 2.0).unwrap(),
        ];
        for b in &bodies {
            let back = body_from_json(&body_to_json(b)).unwrap();
            for i in 0..64 {
                let u = crate::geometry::vec::unit_at(i as f64 * 0.1);
                assert!((b.h(u) - back.h(u)).abs() < 1e-12);
            }
        }
    }

    #[test]
    fn sampled_round_trip_is_exact() {
        let pts: Vec<V2> = (0..200).map(|i| crate::geometry::vec::unit_at(TAU * i as f64 / 200.0)).collect();
        let b = ConvexBody::from_boundary_samples(&pts, &pts).unwrap();
        let text = body_to_json(&b);
        let back = body_from_json(&text).unwrap();
        assert_eq!(body_to_json(&back), text);
    }

    #[test]
    fn errors_name_the_field() {
        let e = body_from_json(r#"{"variant": "disk"}"#).unwrap_err();
        assert!(e.to_string().contains("radius"), "{e}");
        let e = spec_from_json(r#"{"caustic": {"variant": "disk", "radius": 1}, "metric": {"variant": "disk", "radius": 1}}"#, None)
            .unwrap_err();
        assert!(e.to_string().contains("length"), "{e}");
    }
}
