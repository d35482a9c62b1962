/// Periodic cubic spline through `(x_i, y_i)` with period `p` (`x` strictly increasing in `[0, p)`).
#[derive(Debug, Clone)]
pub(crate) struct PeriodicSpline {
    x: Vec<f64>,
    y: Vec<f64>,
    m: Vec<f64>,
    period: f64,
}

impl PeriodicSpline {
    pub(crate) fn new(x: Vec<f64>, y: Vec<f64>, period: f64) -> Self {
        let n = x.len();
        let h: Vec<f64> = (0..n).map(|i| if i + 1 < n { x[i + 1] - x[i] } else { x[0] + period - x[i] }).collect();
        let slope: Vec<f64> = (0..n).map(|i| (y[(i + 1) % n] - y[i]) / h[i]).collect();
        // cyclic tridiagonal system for the second derivatives m_i
        let diag: Vec<f64> = (0..n).map(|i| 2.0 * (h[(i + n - 1) % n] + h[i])).collect();
        let off: Vec<f64> = h.clone();
        let rhs: Vec<f64> = (0..n).map(|i| 6.0 * (slope[i] - slope[(i + n - 1) % n])).collect();
        let m = solve_cyclic(&off, &diag, &rhs);
        PeriodicSpline { x, y, m, period }
    }

    pub(crate) fn eval(&self, t: f64) -> f64 {
        let n = self.x.len();
        let t = self.x[0] + (t - self.x[0]).rem_euclid(self.period);
        let i = self.x.partition_point(|&v| v <= t).saturating_sub(1);
        let (x0, x1) = (self.x[i], if i + 1 < n { self.x[i + 1] } else { self.x[0] + self.period });
        let h = x1 - x0;
        let (a, b) = ((x1 - t) / h, (t - x0) / h);
        let (y0, y1) = (self.y[i], self.y[(i + 1) % n]);
        let (m0, m1) = (self.m[i], self.m[(i + 1) % n]);
        a * y0 + b * y1 + ((a * a * a - a) * m0 + (b * b * b - b) * m1) * h * h / 6.0
    }
}

/// Solves `off[i-1]·z[i-1] + diag[i]·z[i] + off[i]·z[i+1] = rhs[i]` with cyclic indices
/// (Sherman–Morrison on the Thomas algorithm).
fn solve_cyclic(off: &[f64], diag: &[f64], rhs: &[f64]) -> Vec<f64> {
    let n = diag.len();
    if n < 3 {
        return vec![0.0; n];
    }
    let alpha = off[n - 1];
    let beta = off[n - 1];
    let gamma = -diag[0];
    let mut bb = diag.to_vec();
    bb[0] -= gamma;
    bb[n - 1] -= alpha * beta / gamma;
    let lower = |i: usize| off[i - 1];
    let upper = |i: usize| off[i];
    let thomas = |d: &[f64]| {
        let mut c = vec![0.0; n];
        let mut z = vec![0.0; n];
        c[0] = upper(0) / bb[0];
        z[0] = d[0] / bb[0];
        for i in 1..n {
            let den = bb[i] - lower(i) * c[i - 1];
            if i + 1 < n {
                c[i] = upper(i) / den;
            }
            z[i] = (d[i] - lower(i) * z[i - 1]) / den;
        }
        for i in (0..n - 1).rev() {
            z[i] -= c[i] * z[i + 1];
        }
        z
    };
    let x = thomas(rhs);
    let mut u = vec![0.0; n];
    u[0] = gamma;
    u[n - 1] = alpha;
    let z = thomas(&u);
    let fact = (x[0] + beta * x[n - 1] / gamma) / (1.0 + z[0] + beta * z[n - 1] / gamma);
    x.iter().zip(&z).map(|(a, b)| a - fact * b).collect()
}

#[cfg(test)]
mod tests {
    use super::*;
    use std::f64::consts::TAU;

    #[test]
    fn reproduces_trig() {
        let n = 64;
        let x: Vec<f64> = (0..n).map(|i| TAU * (i as f64 + 0.3 * (i % 3) as f64) / n as f64).collect();
        let y: Vec<f64> = x.iter().map(|t| t.sin() + 0.5 * (2.0 * t).cos()).collect();
        let s = PeriodicSpline::new(x, y, TAU);
        for k in 0..200 {
            let t = -1.0 + 9.0 * k as f64 / 200.0;
            assert!((s.eval(t) - (t.sin() + 0.5 * (2.0 * t).cos())).abs() < 1e-4);
        }
    }
}
