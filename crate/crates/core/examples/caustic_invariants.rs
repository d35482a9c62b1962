//! Rotation number, minimal action and Lazutkin parameter of a caustic, and the identity tying them.

use minkoscope::billiard::BilliardConfig;
use minkoscope::geometry::minkowski_perimeter;
use minkoscope::invariants::caustic_invariants;
use minkoscope::string::{string_construct, StringSpec};
use minkoscope::ConvexBody;

fn main() -> minkoscope::Result<()> {
    let c = ConvexBody::ellipse(1.0, 0.6)?;
    let t = ConvexBody::lp_ball(1.5)?;
    let l = minkowski_perimeter(&c, &t)? + 2.0;
    let k = string_construct(&StringSpec::new(c.clone(), t.clone(), l)?, 1024)?;
    let cfg = BilliardConfig::new(&k, &t, 1024)?;
    let inv = caustic_invariants(&cfg, &c, 1024, 20_000)?;
    println!("omega     {:.9}", inv.omega);
    println!("beta      {:.9}", inv.beta);
    println!("Per       {:.9} (circle integral {:.9})", inv.perimeter, inv.perimeter_circle);
    println!("Lazutkin  {:.9}", inv.lazutkin);
    println!("Lazutkin + beta + omega*Per = {:.2e}", inv.identity_residual);
    Ok(())
}
