use crate::error::{Error, Result};
use crate::geometry::{v2, ConvexBody, V2};
use nalgebra::Matrix2;

fn axes(a_matrix: &Matrix2<f64>) -> Result<(f64, f64, Matrix2<f64>)> {
    let sym = 0.5 * (a_matrix + a_matrix.transpose());
    if (sym - a_matrix).norm() > 1e-12 * a_matrix.norm() {
        return Err(Error::InvalidArgument("ellipse matrix must be symmetric".into()));
    }
    let eig = sym.symmetric_eigen();
    let (l0, l1) = (eig.eigenvalues[0], eig.eigenvalues[1]);
    if !(l0 > 0.0 && l1 > 0.0) {
        return Err(Error::InvalidArgument("ellipse matrix must be positive definite".into()));
    }
    // semi-axes are the reciprocal eigenvalues; order them so that a ≥ b
    let (ia, ib) = if l0 <= l1 { (0, 1) } else { (1, 0) };
    let r = Matrix2::from_columns(&[eig.eigenvectors.column(ia).into_owned(), eig.eigenvectors.column(ib).into_owned()]);
    Ok((1.0 / eig.eigenvalues[ia], 1.0 / eig.eigenvalues[ib], r))
}

fn check_lambda(b: f64, lambda: f64) -> Result<()> {
    if !(lambda > 0.0 && lambda < b * b) {
        return Err(Error::InvalidConfocalParameter(lambda));
    }
    Ok(())
}

/// The confocal ellipse `{q₁²/(a²−λ) + q₂²/(b²−λ) ≤ 1}` inside `E = A⁻¹B`, in the frame of `A`.
pub fn confocal_caustic(a_matrix: &Matrix2<f64>, lambda: f64) -> Result<ConvexBody> {
    let (a, b, r) = axes(a_matrix)?;
    check_lambda(b, lambda)?;
    let d = Matrix2::from_diagonal(&v2((a * a - lambda).sqrt(), (b * b - lambda).sqrt()));
    ConvexBody::ellipse_with_shape(V2::zeros(), r * d * r.transpose())
}

/// Dual caustic `A·C = {a²p₁²/(a²−λ) + b²p₂²/(b²−λ) ≤ 1}` of the confocal caustic `C`.
pub fn confocal_dual(a_matrix: &Matrix2<f64>, lambda: f64) -> Result<ConvexBody> {
    let (a, b, r) = axes(a_matrix)?;
    check_lambda(b, lambda)?;
    let d = Matrix2::from_diagonal(&v2((a * a - lambda).sqrt() / a, (b * b - lambda).sqrt() / b));
    ConvexBody::ellipse_with_shape(V2::zeros(), r * d * r.transpose())
}

/// Discriminants `(Δ₁, Δ₂)` of the two intersection quadratics: the line `q + tp` against `C`,
/// and the dual line `p + t·n` (with `n = (q₁/a², q₂/b²)`) against `A·C`.
///
/// Both quadratics are formed from the unsimplified intersection equations, so their equality
/// relies on `q ∈ ∂E` and `|p| = 1`.
pub fn discriminant_pair(a: f64, b: f64, lambda: f64, q: V2, p: V2) -> (f64, f64) {
    let (ca, cb) = (a * a - lambda, b * b - lambda);
    let quad_b = 2.0 * (q.x * p.x / ca + q.y * p.y / cb);

    let a1 = p.x * p.x / ca + p.y * p.y / cb;
    let c1 = q.x * q.x / ca + q.y * q.y / cb - 1.0;
    let d1 = quad_b * quad_b - 4.0 * a1 * c1;

    let n = v2(q.x / (a * a), q.y / (b * b));
    let a2 = a * a * n.x * n.x / ca + b * b * n.y * n.y / cb;
    let c2 = a * a * p.x * p.x / ca + b * b * p.y * p.y / cb - 1.0;
    let quad_b2 = 2.0 * (a * a * p.x * n.x / ca + b * b * p.y * n.y / cb);
    let d2 = quad_b2 * quad_b2 - 4.0 * a2 * c2;
    (d1, d2)
}
