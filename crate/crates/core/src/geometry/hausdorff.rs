use super::body::ConvexBody;
use super::numeric::golden_min;
use super::vec::unit_at;
use std::f64::consts::TAU;

/// `sup_{|u|=1} |h_A(u) − h_B(u)|`, by a dense direction scan refined around the largest peaks.
pub fn hausdorff_distance(a: &ConvexBody, b: &ConvexBody) -> f64 {
    let m = 4096;
    let step = TAU / m as f64;
    let g = |phi: f64| {
        let u = unit_at(phi);
        (a.h(u) - b.h(u)).abs()
    };
    let vals: Vec<f64> = (0..m).map(|j| g(j as f64 * step)).collect();
    let mut peaks: Vec<usize> = (0..m)
        .filter(|&j| vals[j] >= vals[(j + m - 1) % m] && vals[j] >= vals[(j + 1) % m])
        .collect();
    peaks.sort_by(|&i, &j| vals[j].partial_cmp(&vals[i]).unwrap());
    let mut best = vals.iter().cloned().fold(0.0, f64::max);
    for &j in peaks.iter().take(8) {
        let c = j as f64 * step;
        let (_, v) = golden_min(|x| -g(x), c - step, c + step, 1e-12);
        best = best.max(-v);
    }
    best
}

/// `max_u (h_A(u) − h_B(u))` over `n` equally spaced unit directions; `≤ 0` iff `A ⊆ B` there.
pub fn support_excess(a: &ConvexBody, b: &ConvexBody, n: usize) -> f64 {
    (0..n)
        .map(|j| {
            let u = unit_at(TAU * j as f64 / n as f64);
            a.h(u) - b.h(u)
        })
        .fold(f64::NEG_INFINITY, f64::max)
}
