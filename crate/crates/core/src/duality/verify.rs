use crate::billiard::{alpha, BilliardConfig, Side};
use crate::geometry::vec::rot90;
use crate::geometry::{tangent_points, ConvexBody, OrientedLine};
use crate::invariants::{parameter_report, ParameterReport};
use rayon::prelude::*;
use serde::Serialize;

#[derive(Debug, Clone, Copy, PartialEq, Eq, Serialize)]
#[serde(rename_all = "kebab-case")]
pub enum Verdict {
    Dual,
    NotDual,
}

/// Tuning of [`verify_duality`].
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct DualityOptions {
    /// Number of tangent lines pushed through `α`.
    pub samples: usize,
    /// Bound on the tangency error.
    pub tol: f64,
    /// Orbit half-window `N` for rotation number and minimal action.
    pub iterations: usize,
    /// Boundary samples for invariant circles and string lengths.
    pub resolution: usize,
}

impl Default for DualityOptions {
    fn default() -> Self {
        DualityOptions { samples: 256, tol: 1e-6, iterations: 100_000, resolution: 1024 }
    }
}

/// Result of checking a candidate pair `C ⊂ K`, `C′ ⊂ T`. Pairs are `(C, C′)`.
#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct DualityReport {
    pub tangency_error: f64,
    pub perimeters: (f64, f64),
    pub lazutkin: (f64, f64),
    pub rotation: (f64, f64),
    pub minimal_action: (f64, f64),
    pub verdict: Verdict,
    #[serde(skip)]
    pub parameters: Option<ParameterReport>,
}

pub const PERIMETER_TOL: f64 = 1e-4;
pub const LAZUTKIN_TOL: f64 = 1e-3;
pub const ROTATION_TOL: f64 = 1e-4;

/// Pushes positive tangent lines of `C` through `α` and measures how far the images are from
/// touching `C′` on their right; then compares perimeter, Lazutkin parameter and rotation number.
///
/// Never fails: anything that cannot be computed is reported as NaN and gives `not-dual`.
pub fn verify_duality(config: &BilliardConfig, c: &ConvexBody, c_dual: &ConvexBody, opts: &DualityOptions) -> DualityReport {
    let samples = config.param_k().uniform_samples(opts.samples.max(1));
    let tangency_error = samples
        .par_iter()
        .map(|(_, s)| {
            let tp = tangent_points(c, s.point).ok()?;
            let line = OrientedLine::new(s.point, tp.e - s.point);
            let img = alpha(config, &line, Side::K).ok()?;
            let nu = rot90(img.dir);
            Some((c_dual.h(nu) - img.base.dot(&nu)).abs())
        })
        .map(|e| e.unwrap_or(f64::NAN))
        .reduce(|| 0.0, |a, b| if a.is_nan() || b.is_nan() { f64::NAN } else { a.max(b) });

    let params = parameter_report(config, c, c_dual, opts.resolution, opts.iterations).ok();
    let pick = |f: &dyn Fn(&ParameterReport) -> (f64, f64)| params.as_ref().map(f).unwrap_or((f64::NAN, f64::NAN));
    let perimeters = pick(&|p| (p.table_side.perimeter, p.dual_side.perimeter));
    let lazutkin = pick(&|p| (p.table_side.lazutkin, p.dual_side.lazutkin));
    let rotation = pick(&|p| (p.table_side.omega, p.dual_side.omega));
    let minimal_action = pick(&|p| (p.table_side.beta, p.dual_side.beta));
    let ok = tangency_error <= opts.tol
        && (perimeters.0 - perimeters.1).abs() <= PERIMETER_TOL
        && (lazutkin.0 - lazutkin.1).abs() <= LAZUTKIN_TOL
        && (rotation.0 - rotation.1).abs() <= ROTATION_TOL;
    DualityReport {
        tangency_error,
        perimeters,
        lazutkin,
        rotation,
        minimal_action,
        verdict: if ok { Verdict::Dual } else { Verdict::NotDual },
        parameters: params,
    }
}
