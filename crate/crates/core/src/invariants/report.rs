use super::circle::{invariant_circle, perimeter_via_circle};
use super::orbit::orbit_statistics;
use crate::billiard::BilliardConfig;
use crate::error::Result;
use crate::geometry::{minkowski_perimeter, ConvexBody};
use crate::string::StringFunction;
use rayon::prelude::*;
use serde::Serialize;

/// Invariants of one caustic in one billiard.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct CausticInvariants {
    pub omega: f64,
    pub omega_half: f64,
    pub beta: f64,
    /// `Per_{h_T}(C)` computed directly.
    pub perimeter: f64,
    /// `−∮ s dt` over the invariant circle.
    pub perimeter_circle: f64,
    /// Mean string length on `∂K` minus `Per_{h_T}(C)`.
    pub lazutkin: f64,
    /// `max f − min f` on `∂K`; zero for a true caustic.
    pub string_spread: f64,
    /// `Lazutkin + β + ω·Per`.
    pub identity_residual: f64,
    pub steps: usize,
    pub truncated: bool,
}

/// Both sides of a candidate dual pair and the differences of the three parameters.
#[derive(Debug, Clone, Copy, PartialEq, Serialize)]
pub struct ParameterReport {
    pub table_side: CausticInvariants,
    pub dual_side: CausticInvariants,
    pub delta_perimeter: f64,
    pub delta_lazutkin: f64,
    pub delta_omega: f64,
}

/// Computes every invariant of `C` in the billiard `config` from `resolution` circle samples
/// and an orbit window of `2N` steps.
pub fn caustic_invariants(config: &BilliardConfig, c: &ConvexBody, resolution: usize, n: usize) -> Result<CausticInvariants> {
    let circle = invariant_circle(config, c, resolution)?;
    let stats = orbit_statistics(config, &circle, n)?;
    let perimeter = minkowski_perimeter(c, config.geometry())?;
    let f = StringFunction::new(c, config.geometry())?;
    let values = config
        .param_k()
        .uniform_samples(resolution)
        .par_iter()
        .map(|(_, s)| f.value(s.point))
        .collect::<Result<Vec<f64>>>()?;
    let lo = values.iter().copied().fold(f64::INFINITY, f64::min);
    let hi = values.iter().copied().fold(f64::NEG_INFINITY, f64::max);
    let lazutkin = values.iter().sum::<f64>() / values.len() as f64 - perimeter;
    Ok(CausticInvariants {
        omega: stats.omega,
        omega_half: stats.omega_half,
        beta: stats.beta,
        perimeter,
        perimeter_circle: perimeter_via_circle(&circle),
        lazutkin,
        string_spread: hi - lo,
        identity_residual: lazutkin + stats.beta + stats.omega * perimeter,
        steps: stats.steps,
        truncated: stats.truncated,
    })
}

/// Invariants of `C` in `(K, T)` and of `C′` in `(T, K)`.
pub fn parameter_report(
    config: &BilliardConfig,
    c: &ConvexBody,
    c_dual: &ConvexBody,
    resolution: usize,
    n: usize,
) -> Result<ParameterReport> {
    let swapped = config.swapped();
    let (a, b) = rayon::join(
        || caustic_invariants(config, c, resolution, n),
        || caustic_invariants(&swapped, c_dual, resolution, n),
    );
    let (a, b) = (a?, b?);
    Ok(ParameterReport {
        table_side: a,
        dual_side: b,
        delta_perimeter: (a.perimeter - b.perimeter).abs(),
        delta_lazutkin: (a.lazutkin - b.lazutkin).abs(),
        delta_omega: (a.omega - b.omega).abs(),
    })
}
