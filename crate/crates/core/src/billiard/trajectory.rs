use super::annulus::annulus_coords;
use super::config::BilliardConfig;
use super::maps::{billiard_map, chord};
use crate::error::{Error, Result};
use crate::geometry::vec::wrap_from;
use crate::geometry::{OrientedLine, V2};

/// Orbit data of `N` billiard steps. Entry `n` describes the chord from `q_n` to `q_{n+1}`.
#[derive(Debug, Clone, Default)]
pub struct TrajectoryRecord {
    pub lines: Vec<OrientedLine>,
    pub impacts: Vec<V2>,
    pub duals: Vec<V2>,
    pub lifts: Vec<f64>,
    pub s: Vec<f64>,
    pub segment_lengths: Vec<f64>,
    /// Set when a near-tangent line stopped the iteration early.
    pub truncated: bool,
}

impl TrajectoryRecord {
    pub fn len(&self) -> usize {
        self.lines.len()
    }

    pub fn is_empty(&self) -> bool {
        self.lines.is_empty()
    }
}

/// Apply the billiard map `n` times starting from `start`, recording impacts, dual points
/// `p_n = ∇h_T(−v_n)`, lifted coordinates and `h_T`-chord lengths.
pub fn iterate_trajectory(config: &BilliardConfig, start: &OrientedLine, n: usize) -> Result<TrajectoryRecord> {
    let (a, _) = chord(config.table(), start)?;
    let mut line = OrientedLine::new(start.point_at(a), start.dir);
    let mut rec = TrajectoryRecord::default();
    let p = config.perimeter();
    let mut ann = annulus_coords(config, &line)?;
    let mut lift = ann.t;
    for _ in 0..n {
        let next = match billiard_map(config, &line) {
            Ok(l) => l,
            Err(Error::TangentLine(_)) | Err(Error::NoImpact) => {
                rec.truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let next_ann = match annulus_coords(config, &next) {
            Ok(a) => a,
            Err(Error::TangentLine(_)) => {
                rec.truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let dual = config.geometry().inverse_normal(-line.dir)?;
        rec.lines.push(line);
        rec.impacts.push(line.base);
        rec.duals.push(dual);
        rec.lifts.push(lift);
        rec.s.push(ann.s);
        rec.segment_lengths.push(config.geometry().h(next.base - line.base));
        lift += wrap_from(next_ann.t - lift, 0.0, p);
        line = next;
        ann = next_ann;
    }
    Ok(rec)
}
