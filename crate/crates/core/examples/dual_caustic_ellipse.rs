//! The confocal caustic of a 3×2 ellipse and its dual, checked against the closed form.

use minkoscope::billiard::BilliardConfig;
use minkoscope::duality::{confocal_caustic, dual_caustic_smooth, verify_duality, DualityOptions};
use minkoscope::geometry::hausdorff_distance;
use minkoscope::ConvexBody;
use nalgebra::Matrix2;

fn main() -> minkoscope::Result<()> {
    let a = Matrix2::new(1.0 / 3.0, 0.0, 0.0, 0.5);
    let k = ConvexBody::ellipse(3.0, 2.0)?;
    let c = confocal_caustic(&a, 1.0)?;
    let dual = dual_caustic_smooth(&k, &c, 2048)?;
    let closed = ConvexBody::ellipse((8.0f64 / 9.0).sqrt(), 0.75f64.sqrt())?;
    println!("d_H(dual, closed form) = {:.2e}", hausdorff_distance(&dual, &closed));

    let cfg = BilliardConfig::new(&k, &ConvexBody::disk(1.0)?, 1024)?;
    let rep = verify_duality(&cfg, &c, &dual, &DualityOptions { iterations: 20_000, ..Default::default() });
    println!("verdict {:?}", rep.verdict);
    println!("  perimeters {:.8} {:.8}", rep.perimeters.0, rep.perimeters.1);
    println!("  lazutkin   {:.8} {:.8}", rep.lazutkin.0, rep.lazutkin.1);
    println!("  rotation   {:.8} {:.8}", rep.rotation.0, rep.rotation.1);
    Ok(())
}
