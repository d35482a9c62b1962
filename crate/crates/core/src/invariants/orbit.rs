use super::circle::InvariantCircle;
use crate::billiard::{billiard_map, chord, line_from_annulus, BilliardConfig};
use crate::error::{Error, Result};
use crate::geometry::vec::wrap_from;
use crate::geometry::OrientedLine;

/// Birkhoff averages along an orbit of the billiard map restricted to an invariant circle.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrbitStatistics {
    /// Rotation number in `[0, 1)`.
    pub omega: f64,
    /// Rotation number from the first half of the window (a convergence indicator).
    pub omega_half: f64,
    /// Minimal action: mean of the generating function `−h_T(q_{n+1} − q_n)`.
    pub beta: f64,
    /// Number of steps actually averaged.
    pub steps: usize,
    /// Set when a near-tangent line ended the orbit early.
    pub truncated: bool,
}

/// The same line traversed backwards: based at its exit point, pointing the other way.
fn reversed(config: &BilliardConfig, line: &OrientedLine) -> Result<OrientedLine> {
    let (_, b) = chord(config.table(), line)?;
    Ok(OrientedLine::new(line.point_at(b), -line.dir))
}

fn step_back(config: &BilliardConfig, line: &OrientedLine) -> Result<OrientedLine> {
    let back = billiard_map(config, &reversed(config, line)?)?;
    reversed(config, &back)
}

/// Re-seats `line` on the circle at its own base point. Without this, sampling error in `K`
/// lets orbits near a low-order resonance drift off the circle into islands.
fn onto(config: &BilliardConfig, circle: &InvariantCircle, line: &OrientedLine) -> Result<OrientedLine> {
    let t = config.param_k().t_of(line.base);
    line_from_annulus(config, t, circle.value(t))
}

/// Orbit statistics over the symmetric window `n = −N … N−1` starting from `circle(t0)`.
///
/// The window start is reached by running the reversed dynamics `N` steps backwards.
pub fn orbit_statistics(config: &BilliardConfig, circle: &InvariantCircle, n: usize) -> Result<OrbitStatistics> {
    let t0 = circle.t()[0];
    let mut line = line_from_annulus(config, t0, circle.value(t0))?;
    let mut back = 0;
    for _ in 0..n {
        match step_back(config, &line).and_then(|l| onto(config, circle, &l)) {
            Ok(l) => {
                line = l;
                back += 1;
            }
            Err(Error::TangentLine(_) | Error::NoImpact) => break,
            Err(e) => return Err(e),
        }
    }
    let total = back + n;
    let p = config.perimeter();
    let param = config.param_k();
    let geom = config.geometry();
    let mut t = param.t_of(line.base);
    let mut lift = 0.0;
    let mut action = 0.0;
    let mut half_lift = 0.0;
    let mut steps = 0;
    let mut truncated = back < n;
    for k in 0..total {
        let next = match billiard_map(config, &line).and_then(|l| onto(config, circle, &l)) {
            Ok(l) => l,
            Err(Error::TangentLine(_) | Error::NoImpact) => {
                truncated = true;
                break;
            }
            Err(e) => return Err(e),
        };
        let t1 = param.t_of(next.base);
        lift += wrap_from(t1 - t, 0.0, p);
        action -= geom.h(next.base - line.base);
        t = t1;
        line = next;
        steps += 1;
        if k + 1 == total / 2 {
            half_lift = lift;
        }
    }
    if steps == 0 {
        return Err(Error::TangentLine(circle.value(t0)));
    }
    let omega = (lift / (steps as f64 * p)).rem_euclid(1.0);
    let omega_half = if steps >= total / 2 && total >= 2 {
        (half_lift / ((total / 2) as f64 * p)).rem_euclid(1.0)
    } else {
        omega
    };
    Ok(OrbitStatistics { omega, omega_half, beta: action / steps as f64, steps, truncated })
}

/// Rotation number `lim r_n/(n·P)` of the circle, from an `N`-step orbit.
pub fn rotation_number(config: &BilliardConfig, circle: &InvariantCircle, n: usize) -> Result<f64> {
    let t0 = circle.t()[0];
    let mut line = line_from_annulus(config, t0, circle.value(t0))?;
    let p = config.perimeter();
    let param = config.param_k();
    let mut t = param.t_of(line.base);
    let mut lift = 0.0;
    let mut steps = 0usize;
    for _ in 0..n {
        match billiard_map(config, &line).and_then(|l| onto(config, circle, &l)) {
            Ok(next) => {
                let t1 = param.t_of(next.base);
                lift += wrap_from(t1 - t, 0.0, p);
                t = t1;
                line = next;
                steps += 1;
            }
            Err(Error::TangentLine(_) | Error::NoImpact) => break,
            Err(e) => return Err(e),
        }
    }
    if steps == 0 {
        return Err(Error::TangentLine(circle.value(t0)));
    }
    Ok((lift / (steps as f64 * p)).rem_euclid(1.0))
}

/// Minimal action `β` over the symmetric window of length `2N`.
pub fn minimal_action(config: &BilliardConfig, circle: &InvariantCircle, n: usize) -> Result<f64> {
    Ok(orbit_statistics(config, circle, n)?.beta)
}

#[cfg(test)]
mod tests {
    use super::*;
    use crate::geometry::ConvexBody;
    use crate::invariants::invariant_circle;

    #[test]
    fn disk_values() {
        let k = ConvexBody::disk(2.0).unwrap();
        let c = ConvexBody::disk(1.0).unwrap();
        let cfg = BilliardConfig::new(&k, &c, 256).unwrap();
        let circ = invariant_circle(&cfg, &c, 64).unwrap();
        let st = orbit_statistics(&cfg, &circ, 2000).unwrap();
        assert!((st.omega - 1.0 / 3.0).abs() < 1e-9, "{st:?}");
        assert!((st.beta + 2.0 * 3f64.sqrt()).abs() < 1e-9);
        assert_eq!(st.steps, 4000);
        assert!((rotation_number(&cfg, &circ, 500).unwrap() - 1.0 / 3.0).abs() < 1e-9);
    }
}
