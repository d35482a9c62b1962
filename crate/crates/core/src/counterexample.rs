//! Smoothed ℓ1 geometries over an interval caustic with string length 6.
//!
//! `T_n` is the ℓp ball with `p_n = 1 + 1/n` and `K_n` the `h_{T_n}`-string construction over
//! `I = [−1, 1] × {0}`. The symmetric 2-periodic orbit along the `q1`-axis forces any dual
//! caustic to be a centred segment `[−ε_n, ε_n] × {0}`; its half-width is read off from the
//! tangent line at the bottom of `K_n`. A dual caustic of that shape would squeeze `T_n`
//! between `(2 ∓ 2ε_n)·K_n°`, which the constructed tables visibly violate.

use crate::billiard::{chord, BilliardConfig};
use crate::duality::{verify_duality, DualityOptions, DualityReport};
use crate::error::{Error, Result};
use crate::geometry::numeric::brent_known;
use crate::geometry::vec::{angle_of, unit_at, wrap_angle};
use crate::geometry::{hausdorff_distance, support_excess, tangent_points, v2, ConvexBody, OrientedLine, V2};
use crate::string::{string_construct, StringFunction, StringSpec};
use rayon::prelude::*;
use serde::Serialize;
use std::f64::consts::{FRAC_PI_2, PI};

pub const STRING_LENGTH: f64 = 6.0;
pub const SANDWICH_DIRECTIONS: usize = 512;
/// Gap below which the construction no longer contradicts a flat dual.
pub const GAP_FLOOR: f64 = 0.5;

#[derive(Debug, Clone)]
pub struct CounterexampleInstance {
    pub n: usize,
    pub p_n: f64,
    pub t_n: ConvexBody,
    pub caustic: ConvexBody,
    pub k_n: ConvexBody,
    pub q_n: V2,
    /// Direction of the positive tangent from `q_n`, scaled onto `∂T_n`.
    pub v_n: V2,
    pub eps_n: f64,
    pub gap_n: f64,
}

impl CounterexampleInstance {
    /// The only shape a dual caustic may take: `[−ε_n, ε_n] × {0}`.
    pub fn flat_candidate(&self) -> ConvexBody {
        ConvexBody::segment(v2(-self.eps_n, 0.0), v2(self.eps_n, 0.0))
    }

    /// `K_n` flattens out as `p_n → 1`, so sampled stretches may be stored as flat edges.
    pub fn config(&self, resolution: usize) -> Result<BilliardConfig> {
        BilliardConfig::piecewise(&self.k_n, &self.t_n, resolution)
    }
}

pub fn interval() -> ConvexBody {
    ConvexBody::segment(v2(-1.0, 0.0), v2(1.0, 0.0))
}

pub fn build_instance(n: usize) -> Result<CounterexampleInstance> {
    build_instance_with(n, interval(), 1024)
}

/// Same construction over an arbitrary symmetric caustic inside the unit strip.
pub fn build_instance_with(n: usize, caustic: ConvexBody, resolution: usize) -> Result<CounterexampleInstance> {
    if n < 1 {
        return Err(Error::InvalidArgument("instance index must be at least 1".into()));
    }
    let p_n = 1.0 + 1.0 / n as f64;
    let t_n = ConvexBody::lp_ball(p_n)?;
    let spec = StringSpec::new(caustic.clone(), t_n.clone(), STRING_LENGTH)?;
    let k_n = string_construct(&spec, resolution)?;

    let exact = ExactTable::new(&caustic, &t_n)?;
    let q_n = exact.boundary_point(v2(0.0, -1.0))?;

    let tp = tangent_points(&caustic, q_n)?;
    let dir = tp.e - q_n;
    let v_n = dir / t_n.gauge(dir)?;
    let eps_n = t_n.inverse_normal(v_n)?.x;
    let gap_n = hausdorff_distance(&k_n, &t_n.polar()?.scaled(2.0)?);
    Ok(CounterexampleInstance { n, p_n, t_n, caustic, k_n, q_n, v_n, eps_n, gap_n })
}

#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct FlatCandidateCheck {
    pub eps: f64,
    /// `4(1 + ε_n)`.
    pub implied_ln: f64,
    /// String length of the flat candidate through `(1, 0)` measured with `h_{K_n}`.
    pub measured_ln: f64,
    pub h_k_axis: f64,
    /// Largest support excess in `(2 − 2ε)·T° ⊆ K ⊆ (2 + 2ε)·T°`, the polar form of the sandwich.
    pub violation: f64,
    pub containment_ok: bool,
}

pub fn flat_candidate_check(inst: &CounterexampleInstance) -> FlatCandidateCheck {
    let eps = inst.eps_n;
    let h_k_axis = inst.k_n.h(v2(1.0, 0.0));
    let measured_ln = StringFunction::new(&inst.flat_candidate(), &inst.k_n)
        .and_then(|f| f.value(v2(1.0, 0.0)))
        .unwrap_or(f64::NAN);
    let violation = inst
        .t_n
        .polar()
        .and_then(|tp| Ok((tp.scaled(2.0 - 2.0 * eps)?, tp.scaled(2.0 + 2.0 * eps)?)))
        .map(|(inner, outer)| {
            support_excess(&inner, &inst.k_n, SANDWICH_DIRECTIONS)
                .max(support_excess(&inst.k_n, &outer, SANDWICH_DIRECTIONS))
                .max(0.0)
        })
        .unwrap_or(f64::NAN);
    FlatCandidateCheck {
        eps,
        implied_ln: 4.0 * (1.0 + eps),
        measured_ln,
        h_k_axis,
        violation,
        containment_ok: violation <= 1e-6,
    }
}

/// `∂K_n` as the level set `f = 6` of the string function, without sampling. Needed where the
/// sampled table is too flat to resolve normals (near `(±2, 0)` once `p_n` is close to 1).
struct ExactTable {
    f: StringFunction,
    inner: f64,
}

impl ExactTable {
    fn new(caustic: &ConvexBody, t: &ConvexBody) -> Result<Self> {
        Ok(ExactTable { f: StringFunction::new(caustic, t)?, inner: caustic.max_radius() + 1e-9 })
    }

    fn boundary_point(&self, u: V2) -> Result<V2> {
        let u = u / u.norm();
        let g = |r: f64| self.f.value(r * u).map(|v| v - STRING_LENGTH).unwrap_or(f64::NAN);
        let lo = self.inner;
        let mut hi = 2.0 * lo + 1.0;
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        let r = brent_known(g, lo, hi, g(lo), g(hi), 1e-15)
            .ok_or_else(|| Error::Numerical("table boundary not bracketed".into()))?;
        Ok(r * u)
    }

    fn normal(&self, q: V2) -> Result<V2> {
        let g = self.f.gradient(q)?;
        Ok(g / g.norm())
    }

    /// Boundary point whose outer normal is `w`.
    fn inverse_normal(&self, w: V2) -> Result<V2> {
        let phi = angle_of(w);
        let g = |th: f64| {
            self.boundary_point(unit_at(th))
                .and_then(|q| self.normal(q))
                .map(|n| wrap_angle(angle_of(n) - phi, -PI))
                .unwrap_or(f64::NAN)
        };
        let (a, b) = (phi - FRAC_PI_2 + 1e-6, phi + FRAC_PI_2 - 1e-6);
        let th = brent_known(g, a, b, g(a), g(b), 1e-15)
            .ok_or_else(|| Error::Numerical("normal direction not bracketed".into()))?;
        self.boundary_point(unit_at(th))
    }

    /// One bounce `Ψ_T ∘ Ψ_K` of a line through the table.
    fn bounce(&self, t: &ConvexBody, line: &OrientedLine) -> Result<OrientedLine> {
        let exit = self.exit_point(line)?;
        let w = self.normal(exit)?;
        let p = t.inverse_normal(-line.dir)?;
        let on_t = OrientedLine::new(p, w);
        let (_, s_out) = chord(t, &on_t)?;
        let p_next = on_t.point_at(s_out);
        let q = self.inverse_normal(w)?;
        Ok(OrientedLine::new(q, -t.outer_normal(p_next)?))
    }

    fn exit_point(&self, line: &OrientedLine) -> Result<V2> {
        // far intersection with the level set along the line
        let g = |s: f64| self.f.value(line.point_at(s)).map(|v| v - STRING_LENGTH).unwrap_or(f64::NAN);
        let mut lo = line.dir.dot(&-line.base).max(0.0);
        while g(lo).is_nan() || g(lo) >= 0.0 {
            lo += self.inner;
        }
        let mut hi = lo + 1.0;
        while g(hi) < 0.0 {
            hi *= 2.0;
        }
        let s = brent_known(g, lo, hi, g(lo), g(hi), 1e-15)
            .ok_or_else(|| Error::Numerical("line does not cross the table".into()))?;
        Ok(line.point_at(s))
    }
}

/// Distance between the `q1`-axis line and its image under two billiard bounces, computed on
/// the exact level set of the string function.
pub fn axis_orbit_error(inst: &CounterexampleInstance) -> Result<f64> {
    let exact = ExactTable::new(&inst.caustic, &inst.t_n)?;
    let line = OrientedLine::new(v2(0.0, 0.0), v2(1.0, 0.0));
    let back = exact.bounce(&inst.t_n, &exact.bounce(&inst.t_n, &line)?)?;
    Ok(line.distance(&back))
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleRow {
    pub n: usize,
    pub p_n: f64,
    pub eps_n: f64,
    pub gap_n: f64,
    pub violation: f64,
    pub verdict: String,
}

#[derive(Debug, Clone, PartialEq, Serialize)]
pub struct CounterexampleReport {
    pub rows: Vec<CounterexampleRow>,
    pub eps_decreasing: bool,
    pub min_gap: f64,
    pub verdict: String,
}

impl CounterexampleReport {
    pub fn no_dual(&self) -> bool {
        self.verdict == "no-dual-caustic"
    }

    pub fn write_csv<W: std::io::Write>(&self, w: W) -> Result<()> {
        let mut wr = csv::Writer::from_writer(w);
        for r in &self.rows {
            wr.serialize(r).map_err(|e| Error::Io(e.to_string()))?;
        }
        wr.flush().map_err(|e| Error::Io(e.to_string()))?;
        Ok(())
    }
}

pub fn counterexample_report(n_list: &[usize]) -> Result<CounterexampleReport> {
    counterexample_report_with(n_list, interval(), 1024)
}

pub fn counterexample_report_with(n_list: &[usize], caustic: ConvexBody, resolution: usize) -> Result<CounterexampleReport> {
    if n_list.is_empty() {
        return Err(Error::InvalidArgument("need at least one instance index".into()));
    }
    let rows: Vec<CounterexampleRow> = n_list
        .par_iter()
        .map(|&n| {
            let inst = build_instance_with(n, caustic.clone(), resolution)?;
            let chk = flat_candidate_check(&inst);
            let verdict = if chk.containment_ok { "inconclusive" } else { "sandwich-violated" };
            Ok(CounterexampleRow {
                n,
                p_n: inst.p_n,
                eps_n: inst.eps_n,
                gap_n: inst.gap_n,
                violation: chk.violation,
                verdict: verdict.into(),
            })
        })
        .collect::<Result<_>>()?;
    let mut sorted = rows.clone();
    sorted.sort_by_key(|r| r.n);
    let eps_decreasing = sorted.windows(2).all(|w| w[1].eps_n < w[0].eps_n);
    let min_gap = rows.iter().map(|r| r.gap_n).fold(f64::INFINITY, f64::min);
    let last = sorted.last().unwrap();
    let verdict = if eps_decreasing && min_gap >= GAP_FLOOR && last.verdict == "sandwich-violated" {
        "no-dual-caustic"
    } else {
        "inconclusive"
    };
    Ok(CounterexampleReport { rows, eps_decreasing, min_gap, verdict: verdict.into() })
}

/// Runs the full duality check on the flat candidate.
pub fn flat_candidate_duality(inst: &CounterexampleInstance, opts: &DualityOptions) -> Result<DualityReport> {
    let cfg = inst.config(opts.resolution)?;
    Ok(verify_duality(&cfg, &inst.caustic, &inst.flat_candidate(), opts))
}
