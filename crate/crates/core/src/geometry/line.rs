use super::vec::{cross, V2};
use crate::error::{Error, Result};

/// An oriented line `base + ℝ·dir` with Euclidean-unit `dir`.
#[derive(Debug, Clone, Copy, PartialEq)]
pub struct OrientedLine {
    pub base: V2,
    pub dir: V2,
}

impl OrientedLine {
    /// Panics in debug builds if `dir` is zero; use [`OrientedLine::try_new`] for unchecked input.
    pub fn new(base: V2, dir: V2) -> Self {
        debug_assert!(dir.norm() > 0.0);
        OrientedLine { base, dir: dir / dir.norm() }
    }

    pub fn try_new(base: V2, dir: V2) -> Result<Self> {
        let n = dir.norm();
        if !(n > 0.0 && n.is_finite()) {
            return Err(Error::InvalidArgument("line direction must be nonzero".into()));
        }
        Ok(OrientedLine { base, dir: dir / n })
    }

    /// Same points, opposite orientation (`ℓ̄`).
    pub fn reverse(&self) -> Self {
        OrientedLine { base: self.base, dir: -self.dir }
    }

    /// Image under `x ↦ −x` (`−ℓ`).
    pub fn negate(&self) -> Self {
        OrientedLine { base: -self.base, dir: -self.dir }
    }

    /// Same line with `base` moved to the foot of the perpendicular from the origin.
    pub fn canonical(&self) -> Self {
        OrientedLine { base: self.base - self.base.dot(&self.dir) * self.dir, dir: self.dir }
    }

    pub fn point_at(&self, t: f64) -> V2 {
        self.base + t * self.dir
    }

    /// Signed distance of `x` from the line, positive on the left.
    pub fn signed_offset(&self, x: V2) -> f64 {
        cross(self.dir, x - self.base)
    }

    /// Distance between two oriented lines in canonical form (0 iff equal).
    pub fn distance(&self, other: &OrientedLine) -> f64 {
        let a = self.canonical();
        let b = other.canonical();
        (a.base - b.base).norm() + (a.dir - b.dir).norm()
    }
}
