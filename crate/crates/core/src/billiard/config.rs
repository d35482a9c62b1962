use crate::error::{Error, Result};
use crate::geometry::{minkowski_perimeter, BoundaryParam, ConvexBody};

/// A table `K` in the q-plane with geometry body `T` in the p-plane, with both boundary
/// parametrisations (`∂K` at `h_T`-speed, `∂T` at `h_K`-speed).
#[derive(Debug, Clone)]
pub struct BilliardConfig {
    k: ConvexBody,
    t: ConvexBody,
    param_k: BoundaryParam,
    param_t: BoundaryParam,
    perimeter: f64,
}

impl BilliardConfig {
    /// Symmetric billiard configuration: both bodies smooth, centrally symmetric, strictly convex.
    pub fn new(k: &ConvexBody, t: &ConvexBody, resolution: usize) -> Result<Self> {
        for (name, b) in [("table", k), ("geometry", t)] {
            if !b.is_symmetric() {
                return Err(Error::UnsupportedBody(format!("{name} body is not centrally symmetric")));
            }
            if !b.is_smooth() || !b.is_strictly_convex() {
                return Err(Error::UnsupportedBody(format!(
                    "{name} body must be smooth and strictly convex"
                )));
            }
        }
        let cfg = Self::build(k, t, resolution)?;
        let other = minkowski_perimeter(t, k)?;
        if (cfg.perimeter - other).abs() > 1e-6 * cfg.perimeter.max(1.0) {
            return Err(Error::Numerical(format!(
                "perimeters disagree: {} vs {}",
                cfg.perimeter, other
            )));
        }
        Ok(cfg)
    }

    /// Relaxed configuration admitting polygonal or non-symmetric tables; `T` must be symmetric.
    pub fn piecewise(k: &ConvexBody, t: &ConvexBody, resolution: usize) -> Result<Self> {
        if !t.is_symmetric() {
            return Err(Error::UnsupportedMetric("geometry body must be centrally symmetric".into()));
        }
        Self::build(k, t, resolution)
    }

    fn build(k: &ConvexBody, t: &ConvexBody, resolution: usize) -> Result<Self> {
        let param_k = BoundaryParam::new(k, t, resolution)?;
        let param_t = if k.is_symmetric() {
            BoundaryParam::new(t, k, resolution)?
        } else {
            BoundaryParam::new(t, t, resolution)?
        };
        Ok(BilliardConfig {
            k: k.clone(),
            t: t.clone(),
            perimeter: param_k.total(),
            param_k,
            param_t,
        })
    }

    pub fn table(&self) -> &ConvexBody {
        &self.k
    }

    pub fn geometry(&self) -> &ConvexBody {
        &self.t
    }

    pub fn param_k(&self) -> &BoundaryParam {
        &self.param_k
    }

    pub fn param_t(&self) -> &BoundaryParam {
        &self.param_t
    }

    /// Common perimeter `P = Per_{h_T}(K)`.
    pub fn perimeter(&self) -> f64 {
        self.perimeter
    }

    /// The dual configuration `(T, K)`.
    pub fn swapped(&self) -> Self {
        BilliardConfig {
            k: self.t.clone(),
            t: self.k.clone(),
            perimeter: self.param_t.total(),
            param_k: self.param_t.clone(),
            param_t: self.param_k.clone(),
        }
    }
}
